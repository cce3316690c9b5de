"""Equation objects consumed by the fluxes, the CFL rule and the driver."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import euler
from .errors import ConfigurationError

__all__ = ["LinearAdvection", "Euler", "make_equation"]


@dataclass(frozen=True)
class LinearAdvection:
    """Scalar ``u_t + a u_x = 0``."""

    a: float = 1.0
    name = "lae"
    n_comp = 1

    def flux(self, q):
        return self.a * np.asarray(q, dtype=float)

    def max_speed(self, q):
        q = np.asarray(q)
        return np.full(q.shape[:-1], abs(self.a))

    def check_physical(self, q):
        pass


@dataclass(frozen=True)
class Euler:
    """1D Euler equations of an ideal gas with ratio of specific heats ``gamma``."""

    gamma: float = 1.4
    name = "euler"
    n_comp = 3

    def __post_init__(self):
        euler.EulerParams(self.gamma)

    def flux(self, q):
        return euler.euler_flux(q, self.gamma)

    def max_speed(self, q):
        return euler.max_wave_speed(q, self.gamma)

    def check_physical(self, q):
        euler.check_physical(q, self.gamma)

    def eigenvectors(self, q):
        _, L, R = euler.eigensystem(q, self.gamma)
        return L, R


def make_equation(name: str, **params):
    if name == "lae":
        return LinearAdvection(float(params.get("a", 1.0)))
    if name == "euler":
        return Euler(float(params.get("gamma", 1.4)))
    raise ConfigurationError(f"unknown equation {name!r}")
