"""Numerical laboratory for the radial quintic wave equation outside the unit ball."""

from .kernels import BACKEND
from .core import RadialGrid, RadialState, EnergyRecord, make_grid, norms, energy

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "RadialGrid",
    "RadialState",
    "EnergyRecord",
    "make_grid",
    "norms",
    "energy",
    "__version__",
]
