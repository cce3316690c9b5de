"""Initial conditions, exact solutions and metadata of the benchmark problems.

Problems are addressed by string id through :data:`PROBLEMS` /
:func:`get_problem`.  Pointwise callables take an array of coordinates and
return conserved values of shape ``(npts, n_comp)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .equations import Euler, LinearAdvection
from .errors import ConfigurationError
from .euler import prim_to_cons
from .grid import BoundaryCondition
from .riemann import exact_riemann_star, sample_riemann

__all__ = [
    "ProblemSpec",
    "CompositeWaveParams",
    "RiemannData",
    "RIEMANN_TESTS",
    "lae_test1",
    "lae_test2",
    "euler_smooth_advection",
    "euler_constant_state",
    "euler_riemann",
    "euler_riemann_exact_profile",
    "shock_turbulence",
    "PROBLEMS",
    "get_problem",
]


@dataclass
class ProblemSpec:
    name: str
    equation: object
    x_left: float
    x_right: float
    bc: tuple
    t_final: float
    initial: Callable[[np.ndarray], np.ndarray]
    exact: Callable[[np.ndarray, float], np.ndarray] | None = None
    exact_primitive: Callable[[np.ndarray, float], np.ndarray] | None = None
    initial_primitive: Callable[[np.ndarray], np.ndarray] | None = None
    # points per cell for exact cell averages (discontinuous data need many)
    exact_quadrature_order: int | None = None
    reference: dict | None = None
    meta: dict = field(default_factory=dict)

    @property
    def periodic(self) -> bool:
        return self.bc[0].kind == "periodic"

    @property
    def length(self) -> float:
        return self.x_right - self.x_left


def _periodic_shift(x, shift, x_left, length):
    return x_left + np.mod(np.asarray(x, dtype=float) - shift - x_left, length)


def _col(v):
    return np.asarray(v, dtype=float)[:, None]


# -- linear advection ---------------------------------------------------------

def _sin4(x):
    return np.sin(np.pi * np.asarray(x, dtype=float)) ** 4


def lae_test1(a: float = 1.0, t_final: float = 1.0) -> ProblemSpec:
    """Smooth ``sin^4(pi x)`` on ``[-1, 1]``, periodic."""

    def initial(x):
        return _col(_sin4(x))

    def exact(x, t):
        return _col(_sin4(_periodic_shift(x, a * t, -1.0, 2.0)))

    return ProblemSpec(
        "lae-test1",
        LinearAdvection(a),
        -1.0,
        1.0,
        (BoundaryCondition.periodic(), BoundaryCondition.periodic()),
        t_final,
        initial,
        exact,
    )


@dataclass(frozen=True)
class CompositeWaveParams:
    delta: float = 0.005
    z: float = -0.7
    a: float = 0.5
    alpha: float = 10.0

    @property
    def beta(self) -> float:
        return math.log(2.0) / (36.0 * self.delta**2)

    def G(self, x, z):
        return np.exp(-self.beta * (x - z) ** 2)

    def F(self, x, a):
        return np.sqrt(np.maximum(1.0 - self.alpha**2 * (x - a) ** 2, 0.0))


def composite_wave(x, params: CompositeWaveParams = CompositeWaveParams()) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    p = params
    out = np.zeros_like(x)
    m = (x >= -0.8) & (x <= -0.6)
    xm = x[m]
    out[m] = (p.G(xm, p.z - p.delta) + 4.0 * p.G(xm, p.z) + p.G(xm, p.z + p.delta)) / 6.0
    m = (x >= -0.4) & (x <= -0.2)
    out[m] = 1.0
    m = (x >= 0.0) & (x <= 0.2)
    out[m] = 1.0 - np.abs(10.0 * (x[m] - 0.1))
    m = (x >= 0.4) & (x <= 0.6)
    xm = x[m]
    out[m] = (p.F(xm, p.a - p.delta) + 4.0 * p.F(xm, p.a) + p.F(xm, p.a + p.delta)) / 6.0
    return out


def lae_test2(a: float = 1.0, t_final: float = 2000.0) -> ProblemSpec:
    """Composite wave (Gaussians, square pulse, triangle, ellipse), periodic."""

    def initial(x):
        return _col(composite_wave(x))

    def exact(x, t):
        return _col(composite_wave(_periodic_shift(x, a * t, -1.0, 2.0)))

    return ProblemSpec(
        "lae-test2",
        LinearAdvection(a),
        -1.0,
        1.0,
        (BoundaryCondition.periodic(), BoundaryCondition.periodic()),
        t_final,
        initial,
        exact,
        exact_quadrature_order=40,
    )


# -- Euler ---------------------------------------------------------------------

def _prim_stack(rho, u, p):
    rho = np.asarray(rho, dtype=float)
    return np.stack(np.broadcast_arrays(rho, u, p), axis=-1)


def euler_smooth_advection(gamma: float = 1.4, t_final: float = 2.0) -> ProblemSpec:
    """Density ``2 + sin^4(pi x)`` advected at unit speed and unit pressure."""
    u_inf, p_inf = 1.0, 1.0

    def prim(x, t=0.0):
        xs = _periodic_shift(x, u_inf * t, -1.0, 2.0)
        return _prim_stack(2.0 + _sin4(xs), u_inf, p_inf)

    return ProblemSpec(
        "euler-smooth",
        Euler(gamma),
        -1.0,
        1.0,
        (BoundaryCondition.periodic(), BoundaryCondition.periodic()),
        t_final,
        lambda x: prim_to_cons(prim(x), gamma),
        lambda x, t: prim_to_cons(prim(x, t), gamma),
        exact_primitive=prim,
        initial_primitive=prim,
    )


def euler_constant_state(
    state=(1.0, 0.0, 1.0), gamma: float = 1.4, t_final: float = 0.1, periodic: bool = True
) -> ProblemSpec:
    """Uniform primitive ``state`` on ``[0, 1]``; the exact solution never changes."""

    def prim(x, t=0.0):
        x = np.asarray(x, dtype=float)
        return _prim_stack(np.full(x.shape, state[0]), state[1], state[2])

    bc = BoundaryCondition.periodic() if periodic else BoundaryCondition.transmissive()
    return ProblemSpec(
        "euler-constant",
        Euler(gamma),
        0.0,
        1.0,
        (bc, bc),
        t_final,
        lambda x: prim_to_cons(prim(x), gamma),
        lambda x, t: prim_to_cons(prim(x, t), gamma),
        exact_primitive=prim,
        initial_primitive=prim,
    )


@dataclass(frozen=True)
class RiemannData:
    left: tuple
    right: tuple
    x_d: float
    t_final: float
    title: str = ""


RIEMANN_TESTS = {
    "1": RiemannData((1.0, 0.75, 1.0), (0.125, 0.0, 0.1), 0.3, 0.2, "Modified Sod"),
    "2": RiemannData((1.0, -2.0, 0.4), (1.0, 2.0, 0.4), 0.5, 0.15, "Double rarefaction"),
    "relaxed2": RiemannData((1.0, -1.0, 0.4), (1.0, 1.0, 0.4), 0.5, 0.15, "Relaxed double rarefaction"),
    "3": RiemannData((1.0, 0.0, 1000.0), (1.0, 0.0, 0.01), 0.5, 0.012, "Left Woodward-Colella"),
    "4": RiemannData(
        (5.99924, 19.5975, 460.894), (5.99242, -6.19633, 46.0950), 0.4, 0.035, "Collision of two shocks"
    ),
    "5": RiemannData((1.0, -19.59745, 1000.0), (1.0, -19.59745, 0.01), 0.8, 0.012, "Stationary contact"),
}


def _riemann_key(test_id) -> str:
    key = str(test_id).lower().replace("-", "").replace("_", "").replace(" ", "")
    if key in ("2relaxed", "relaxed"):
        key = "relaxed2"
    if key not in RIEMANN_TESTS:
        raise ConfigurationError(f"unknown Riemann test {test_id!r}")
    return key


def euler_riemann_exact_profile(test_id, x, t: float, gamma: float = 1.4) -> np.ndarray:
    """Primitive exact solution of a Riemann test at time ``t`` (``(npts, 3)``)."""
    data = RIEMANN_TESTS[_riemann_key(test_id)]
    x = np.asarray(x, dtype=float)
    wL = np.array(data.left)
    wR = np.array(data.right)
    if t <= 0.0:
        return np.where((x < data.x_d)[:, None], wL, wR)
    star = exact_riemann_star(wL, wR, gamma)
    return sample_riemann(wL, wR, (x - data.x_d) / t, gamma, star)


def euler_riemann(test_id, gamma: float = 1.4, t_final: float | None = None) -> ProblemSpec:
    key = _riemann_key(test_id)
    data = RIEMANN_TESTS[key]
    wL = np.array(data.left)
    wR = np.array(data.right)

    def prim0(x):
        x = np.asarray(x, dtype=float)
        return np.where((x < data.x_d)[:, None], wL, wR)

    def prim(x, t):
        return euler_riemann_exact_profile(key, x, t, gamma)

    name = "euler-rp2-relaxed" if key == "relaxed2" else f"euler-rp{key}"
    return ProblemSpec(
        name,
        Euler(gamma),
        0.0,
        1.0,
        (BoundaryCondition.transmissive(), BoundaryCondition.transmissive()),
        data.t_final if t_final is None else t_final,
        lambda x: prim_to_cons(prim0(x), gamma),
        lambda x, t: prim_to_cons(prim(x, t), gamma),
        exact_primitive=prim,
        initial_primitive=prim0,
        exact_quadrature_order=40,
        meta={"riemann": data},
    )


SHOCK_TURBULENCE_LEFT = (1.515695, 0.523346, 1.80500)


def shock_turbulence(gamma: float = 1.4, t_final: float = 5.0, reference_cells: int = 20000) -> ProblemSpec:
    """Shock entering a high-frequency density field on ``[-5, 5]``."""

    def prim0(x):
        x = np.asarray(x, dtype=float)
        out = _prim_stack(1.0 + 0.1 * np.sin(20.0 * np.pi * x), 0.0, 1.0)
        out[x < -4.5] = SHOCK_TURBULENCE_LEFT
        return out

    inflow = prim_to_cons(np.array(SHOCK_TURBULENCE_LEFT), gamma)
    return ProblemSpec(
        "euler-shock-turbulence",
        Euler(gamma),
        -5.0,
        5.0,
        (BoundaryCondition.inflow(inflow), BoundaryCondition.transmissive()),
        t_final,
        lambda x: prim_to_cons(prim0(x), gamma),
        initial_primitive=prim0,
        reference={"method": "muscl-minmod", "n_cells": reference_cells, "cfl": 0.5},
    )


PROBLEMS: dict[str, Callable[..., ProblemSpec]] = {
    "lae-test1": lae_test1,
    "lae-test2": lae_test2,
    "euler-smooth": euler_smooth_advection,
    "euler-constant": euler_constant_state,
    "euler-rp1": lambda **kw: euler_riemann("1", **kw),
    "euler-rp2": lambda **kw: euler_riemann("2", **kw),
    "euler-rp2-relaxed": lambda **kw: euler_riemann("relaxed2", **kw),
    "euler-rp3": lambda **kw: euler_riemann("3", **kw),
    "euler-rp4": lambda **kw: euler_riemann("4", **kw),
    "euler-rp5": lambda **kw: euler_riemann("5", **kw),
    "euler-shock-turbulence": shock_turbulence,
}


def get_problem(problem_id: str, **kwargs) -> ProblemSpec:
    try:
        factory = PROBLEMS[problem_id]
    except KeyError:
        known = ", ".join(sorted(PROBLEMS))
        raise ConfigurationError(f"unknown problem {problem_id!r}; known: {known}") from None
    return factory(**kwargs)
