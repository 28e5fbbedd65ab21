"""Exception hierarchy shared by all hahnfield modules."""


class HahnfieldError(ValueError):
    """Base class for every domain error raised by the library."""


class DepthMismatchError(HahnfieldError):
    """Two operands live over value groups of different depth."""


class IndeterminateError(HahnfieldError):
    """The requested quantity lies beyond the known precision of a series."""


class NonArchimedeanError(IndeterminateError):
    """A geometric or Newton expansion would need infinitely many terms.

    Raised when a correction term lives in a strictly smaller archimedean
    class than the requested precision bound, so no finite number of
    iterations reaches the bound.
    """


class DomainError(HahnfieldError):
    """An argument violates an operation's precondition."""
