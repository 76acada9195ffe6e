"""Exception types shared across the package."""


class WilfCountError(Exception):
    """Base class for all package errors."""


class CapMismatchError(WilfCountError, ValueError):
    """Two truncated polynomials with different truncation orders were combined."""


class ResourceLimitError(WilfCountError):
    """A feasibility guard or a state/time budget was exceeded."""


class DomainError(WilfCountError, ValueError):
    """An argument lies outside the domain where a formula is defined."""


class IntegrityError(WilfCountError, ArithmeticError):
    """A computation that must produce an integer did not."""
