"""Exception types raised by the solver components."""

from __future__ import annotations


class ConfigurationError(ValueError):
    """Invalid grid, scheme, boundary or problem configuration."""


class SimulationError(RuntimeError):
    """Base class for failures that terminate a run early.

    The driver turns these into a crashed :class:`~wenodec.solver.RunOutcome`
    instead of letting them escape.
    """

    def __init__(self, message: str, index: int | None = None):
        super().__init__(message)
        self.index = index
        self.context: dict[str, object] = {}

    def annotate(self, **context: object) -> "SimulationError":
        self.context.update(context)
        return self

    def __str__(self) -> str:
        msg = super().__str__()
        if self.index is not None:
            msg = f"{msg} (index {self.index})"
        if self.context:
            extra = ", ".join(f"{k}={v}" for k, v in self.context.items())
            msg = f"{msg} [{extra}]"
        return msg


class NonPhysicalState(SimulationError):
    """Non-positive density or pressure (or a non-finite value) was produced."""


class VacuumGenerated(SimulationError):
    """The Riemann problem data violate the pressure positivity condition."""


class NoConvergence(SimulationError):
    """The star-pressure Newton iteration did not converge."""
