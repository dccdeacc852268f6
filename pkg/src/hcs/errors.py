"""Exception and warning types shared across the package."""


class HCSError(Exception):
    """Base class for errors raised by this package."""


class SingularParameterError(HCSError, ValueError):
    """A parameter sits on a singular point of a map (e.g. 1 + u.u = 0)."""


class InadmissibleParameterError(HCSError, ValueError):
    """The coherent-state label does not give a normalizable state.

    ``condition`` names the violated requirement.
    """

    def __init__(self, message, condition=None):
        super().__init__(message)
        self.condition = condition


class ConvergenceError(HCSError, ArithmeticError):
    """A numerical procedure did not reach its tolerance."""


class ConvergenceWarning(UserWarning):
    """A truncated sum or quadrature looks unconverged."""


class NearBoundaryWarning(UserWarning):
    """The parameter is admissible but close to the boundary w.w = 0."""


class DivergentSeriesError(HCSError, ValueError):
    """A series was requested outside its domain of absolute convergence."""
