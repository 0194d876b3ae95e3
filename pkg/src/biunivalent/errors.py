"""Exception hierarchy shared by every module of the package."""


class BiunivalentError(Exception):
    """Base class for computation errors raised by this package."""


class ParameterError(BiunivalentError, ValueError):
    """A parameter lies outside its admissible domain."""


class BetaOutOfRange(ParameterError):
    """The order bound beta is not in [0, 1)."""


class DivisionBySingularSeries(BiunivalentError, ZeroDivisionError):
    """The divisor series has a (numerically) vanishing constant term."""


class CompositionRequiresZeroConstant(BiunivalentError):
    """The inner series of a composition has a nonzero constant term."""


class DegenerateDenominator(BiunivalentError, ArithmeticError):
    """A closed-form expression hit a denominator below the guard threshold."""

    def __init__(self, message: str, route: str | None = None):
        super().__init__(message)
        self.route = route


class NoFeasibleSample(BiunivalentError):
    """Extremal search found no feasible point, not even the origin."""
