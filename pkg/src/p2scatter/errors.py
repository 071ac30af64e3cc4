"""Exception types shared across the package."""


class DomainError(ValueError):
    """Input is well-formed but mathematically out of range."""


class LatticeViolation(DomainError):
    pass


class DegenerateCharacter(DomainError):
    pass


class OutsideU(DomainError):
    pass


class NonPrimitive(DomainError):
    pass


class DependentInputs(DomainError):
    pass


class UnsortedInput(DomainError):
    pass


class NonExceptional(DomainError):
    pass


class NotOnRoofs(DomainError):
    pass


class BGViolation(DomainError):
    pass


class DenseInput(DomainError):
    pass


class VertexNotFound(DomainError):
    pass


class Undetermined(DomainError):
    """A bounded search ran out of budget before deciding."""
