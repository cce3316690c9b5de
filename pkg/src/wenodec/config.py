"""Run configuration files: a flat JSON document mirroring the CLI flags."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field, fields

from .errors import ConfigurationError
from .problems import get_problem
from .solver import SchemeConfig

__all__ = ["RunConfig", "load_config", "save_config"]


@dataclass
class RunConfig:
    problem: str = "lae-test1"
    order: int = 5
    variables: str = "conserved"
    flux: str | None = None
    integrator: str = "dec"
    cfl: float = 0.95
    eps_weno: float = 1e-6
    cells: int | None = None
    refinements: list = field(default_factory=list)
    t_final: float | None = None
    out: str | None = None

    def __post_init__(self):
        if self.cells is not None and self.cells < 1:
            raise ConfigurationError("cells must be positive")
        if any(int(n) < 1 for n in self.refinements):
            raise ConfigurationError("refinements must be positive cell counts")
        self.refinements = [int(n) for n in self.refinements]

    def build_problem(self):
        kwargs = {} if self.t_final is None else {"t_final": self.t_final}
        return get_problem(self.problem, **kwargs)

    def build_scheme(self, problem=None) -> SchemeConfig:
        problem = problem or self.build_problem()
        flux = self.flux
        if flux is None:
            flux = "upwind" if problem.equation.name == "lae" else "exact"
        return SchemeConfig(
            order=self.order,
            variables=self.variables,
            flux=flux,
            integrator=self.integrator,
            cfl=self.cfl,
            equation=problem.equation,
            eps_weno=self.eps_weno,
        )

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "RunConfig":
        data = json.loads(text)
        if not isinstance(data, dict):
            raise ConfigurationError("configuration must be a JSON object")
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ConfigurationError(f"unknown configuration keys: {sorted(unknown)}")
        return cls(**data)


def load_config(path) -> RunConfig:
    with open(path) as fh:
        return RunConfig.from_json(fh.read())


def save_config(config: RunConfig, path) -> None:
    with open(path, "w") as fh:
        fh.write(config.to_json() + "\n")
