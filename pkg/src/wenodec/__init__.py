"""High-order WENO finite-volume schemes with Deferred Correction and SSP
Runge-Kutta time integration for 1D linear advection and the Euler equations."""

from .equations import Euler, LinearAdvection, make_equation
from .errors import (
    ConfigurationError,
    NoConvergence,
    NonPhysicalState,
    SimulationError,
    VacuumGenerated,
)
from .grid import BoundaryCondition, CellField, Grid1D, make_grid
from .problems import PROBLEMS, ProblemSpec, get_problem
from .solver import RunOutcome, SchemeConfig, reference_muscl_run, run_simulation

__version__ = "0.1.0"

__all__ = [
    "Euler",
    "LinearAdvection",
    "make_equation",
    "ConfigurationError",
    "NoConvergence",
    "NonPhysicalState",
    "SimulationError",
    "VacuumGenerated",
    "BoundaryCondition",
    "CellField",
    "Grid1D",
    "make_grid",
    "PROBLEMS",
    "ProblemSpec",
    "get_problem",
    "RunOutcome",
    "SchemeConfig",
    "reference_muscl_run",
    "run_simulation",
]
