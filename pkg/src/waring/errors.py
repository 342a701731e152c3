"""Exception hierarchy shared by the library and the command line."""

from __future__ import annotations


class WaringError(Exception):
    """Base class for all library errors."""


class ParseError(WaringError, ValueError):
    """Malformed polynomial or variety text; ``position`` is a 0-based offset."""

    def __init__(self, message: str, position: int = 0):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class DomainError(WaringError, ValueError):
    """The input lies outside the domain of the requested algorithm."""


class ConvergenceError(WaringError, ArithmeticError):
    """An iterative numerical routine did not converge."""

    def __init__(self, message: str, iterations: int = 0, residual: float = float("nan")):
        super().__init__(f"{message} (iterations={iterations}, residual={residual:.3e})")
        self.iterations = iterations
        self.residual = residual


class MethodInapplicable(WaringError):
    """The chosen method cannot handle this input; another one may."""


class DegeneracyError(MethodInapplicable):
    """Repeated eigenvalues or a defective eigenstructure."""


class NonCommutingError(MethodInapplicable):
    """Multiplication operators fail to commute exactly."""
