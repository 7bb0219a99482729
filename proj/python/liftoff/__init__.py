"""Radial drift-diffusion lift-off laboratory."""

from ._liftoff import *  # noqa: F401,F403
from ._liftoff import (
    DriftProfile,
    Error,
    GaussianData,
    RadialGrid,
    ValidationError,
    classify,
    parse_scenario,
    run,
    sweep,
    verify,
)

__all__ = [
    "DriftProfile",
    "Error",
    "GaussianData",
    "RadialGrid",
    "ValidationError",
    "classify",
    "parse_scenario",
    "run",
    "sweep",
    "verify",
]
