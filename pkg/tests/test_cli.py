import json
import subprocess
import sys
import xml.etree.ElementTree as ET

import pytest

from p2scatter.cli import main
from p2scatter.exact import Surd
from p2scatter.lattice import ChernCharacter

SVG = "{http://www.w3.org/2000/svg}"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_triangles_json(capsys):
    code, out, _ = run(capsys, "triangles", "--depth", "1", "--twist", "0", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["count"] == 3 and len(data["triangles"]) == 3


def test_triangles_svg(capsys):
    code, out, _ = run(capsys, "triangles", "--depth", "3", "--format", "svg")
    root = ET.fromstring(out)
    assert code == 0 and root.tag == SVG + "svg"
    assert len(root.findall(f".//{SVG}polygon")) == 15


def test_triangles_twist_range(capsys):
    _, out, _ = run(capsys, "triangles", "--depth", "0", "--twist=-1..1")
    assert json.loads(out)["count"] == 3


@pytest.mark.parametrize(
    "argv",
    [
        ["triangles", "--depth", "-1"],
        ["triangles", "--twist", "2..1"],
        ["classify", "--point", "0.5,1"],
        ["classify", "--point", "1"],
        ["firstwall", "--chern", "0,1/2,0"],
        ["render", "--window", "1,0,0,1"],
        ["local"],
    ],
)
def test_bad_flags_exit_2(argv, capsys):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2


def test_local_tangent(capsys):
    code, out, _ = run(capsys, "local", "--x", "0", "--order", "4")
    data = json.loads(out)
    assert code == 0 and data["D"] == 2 and data["agreement"] == "pass"
    lo, hi = (Surd.from_json(data["cone"][k]) for k in ("lo", "hi"))
    assert (lo, hi) == (Surd(3, -2, 2), Surd(3, 2, 2))


def test_local_not_found(capsys):
    code, out, err = run(capsys, "local", "--x", "1/3")
    assert code == 3 and json.loads(out)["error"] == "vertex-not-found"
    assert "vertex-not-found" in err


def test_local_by_character(capsys):
    code, out, _ = run(capsys, "local", "--char", "1,1,1/2", "--order", "2")
    data = json.loads(out)
    assert code == 0 and data["D"] == 1 and data["vertex"] == ["-1/2", "0"]


def test_firstwall(capsys):
    code, out, _ = run(capsys, "firstwall", "--chern", "0,2,0")
    data = json.loads(out)
    assert code == 0 and data["wall"] == ["0", "1/2"] and data["kind"] == "discrete-diagonal"
    assert ChernCharacter.from_json(data["left_generator"]) == ChernCharacter(1, 1, "1/2")


def test_firstwall_nonprimitive(capsys):
    code, out, _ = run(capsys, "firstwall", "--chern", "0,4,0")
    assert code == 3 and json.loads(out)["error"] == "non-primitive"


def test_firstwall_positive_rank(capsys):
    code, out, _ = run(capsys, "firstwall", "--chern", "5,-20,10")
    assert code == 0 and json.loads(out)["case"] == "diamond-base"


def test_classify(capsys):
    code, out, _ = run(capsys, "classify", "--point", "0,1/4")
    assert code == 0 and json.loads(out)["region"] == "triangle-interior"


def test_lepotier(capsys):
    code, out, _ = run(capsys, "lepotier", "--rank-bound", "5")
    segs = json.loads(out)["segments"]
    assert code == 0 and segs
    for s in segs:
        Surd.from_json(s["start"]["x"])


def test_render_svg(tmp_path, capsys):
    path = tmp_path / "d.svg"
    code, _, _ = run(capsys, "render", "--format", "svg", "--lepotier", "--rank-bound", "13", "--out", str(path))
    root = ET.parse(path).getroot()
    groups = {g.get("id") for g in root.findall(f"{SVG}g")}
    assert code == 0 and {"initial", "rays", "roofs", "diamonds", "lepotier"} <= groups


def test_render_no_shading(capsys):
    _, out, _ = run(capsys, "render", "--format", "svg", "--no-shading", "--rank-bound", "5")
    fills = {p.get("fill") for p in ET.fromstring(out).iter(SVG + "polygon")}
    assert fills == {"none"}


def test_output_is_deterministic():
    cmd = [sys.executable, "-m", "p2scatter", "render", "--format", "svg", "--rank-bound", "13"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and a


def test_module_exit_codes():
    run_ = lambda *a: subprocess.run([sys.executable, "-m", "p2scatter", *a], capture_output=True).returncode
    assert run_("classify", "--point", "0,1/4") == 0
    assert run_("triangles", "--depth", "-1") == 2
    assert run_("firstwall", "--chern", "0,4,0") == 3
