"""Steady-state entanglement and steering of a coherent-feedback cavity
magnomechanical system."""

from ._core import *  # noqa: F401,F403
from ._core import (  # noqa: F401
    ConfigError,
    DomainError,
    Error,
    NumericalError,
    StabilityError,
)

__version__ = "0.1.0"
