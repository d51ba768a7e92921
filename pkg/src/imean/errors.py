"""Exception hierarchy shared by all modules."""


class ImeanError(Exception):
    """Base class for domain errors (CLI exit code 1)."""


class GroundMismatch(ImeanError):
    pass


class NotCompatible(ImeanError):
    pass


class NotOrthogonal(ImeanError):
    pass


class CapExceeded(ImeanError):
    def __init__(self, cap):
        super().__init__(f"closure exceeded cap of {cap} elements")
        self.cap = cap


class NotAnElement(ImeanError):
    pass


class ZeroIdempotent(ImeanError):
    pass


class BaseMismatch(ImeanError):
    pass


class ShapeMismatch(ImeanError):
    pass


class InternalInvariantViolation(ImeanError):
    """A self-check that should be impossible by construction failed."""


class NotBijective(ImeanError):
    pass


class ZeroMass(ImeanError):
    pass


class NotPiecewiseFactorizable(ImeanError):
    pass


class InvalidPencil(ImeanError):
    pass


class NotNormalized(ImeanError):
    pass


class DimensionMismatch(ImeanError):
    def __init__(self, level, msg=""):
        super().__init__(f"dimension mismatch at level {level}" + (f": {msg}" if msg else ""))
        self.level = level


class ZeroColumn(ImeanError):
    def __init__(self, level, col):
        super().__init__(f"map {level} has a zero column {col}")
        self.level = level
        self.col = col


class BadBase(ImeanError):
    pass


class NotUHF(ImeanError):
    pass


class OverflowGuard(ImeanError):
    pass


class BadPencil(ImeanError):
    pass


class BadWitness(ImeanError):
    pass


class PartitionMismatch(ImeanError):
    pass


class NotInClass(ImeanError):
    """A map is not a residue-class map with exactly periodic image."""
