"""Hydrogen-atom coherent states in parabolic coordinates."""

from .coherent import (
    LambdaPair,
    amplitude_closed,
    amplitude_normalized,
    evolve,
    overlap,
    series_amplitude,
)
from .errors import (
    ConvergenceError,
    DivergentSeriesError,
    HCSError,
    InadmissibleParameterError,
    SingularParameterError,
)
from .geometry import cs_param, l_of_u, point, validate

__version__ = "0.1.0"

__all__ = [
    "ConvergenceError",
    "DivergentSeriesError",
    "HCSError",
    "InadmissibleParameterError",
    "LambdaPair",
    "SingularParameterError",
    "amplitude_closed",
    "amplitude_normalized",
    "cs_param",
    "evolve",
    "l_of_u",
    "overlap",
    "point",
    "series_amplitude",
    "validate",
]
