"""Time integration: Deferred Correction on Gauss-Lobatto subtimenodes,
explicit SSP Runge-Kutta schemes, and the CFL time-step rule.

Integrators work on plain arrays and call ``rhs(t, u)``; they keep no state
between steps.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from decimal import Decimal
from typing import Callable

import mpmath
import numpy as np

from .errors import ConfigurationError, SimulationError

__all__ = [
    "DeCTableau",
    "RKTableau",
    "gauss_lobatto_nodes",
    "build_dec_tableau",
    "dec_step",
    "rk_step",
    "SSPRK2",
    "SSPRK3",
    "SSPRK54",
    "rk_tableau",
    "compute_dt",
]

RHS = Callable[[float, np.ndarray], np.ndarray]

_DPS = 50


def gauss_lobatto_nodes(n_points: int, dps: int = _DPS) -> list:
    """Gauss-Lobatto nodes on ``[-1, 1]`` as ``mpmath`` numbers, ascending.

    The interior nodes are the roots of ``P_{n-1}'``; all nodes are found at
    once by Newton's method on ``(1 - x^2) P_{n-1}'(x)`` started from the
    Chebyshev-Gauss-Lobatto points.
    """
    if n_points < 2:
        raise ConfigurationError("Gauss-Lobatto rules need at least two points")
    N = n_points - 1
    with mpmath.workdps(dps):
        x = [-mpmath.cos(mpmath.pi * j / N) for j in range(n_points)]
        tol = mpmath.mpf(10) ** (-(dps - 5))
        for _ in range(200):
            worst = mpmath.mpf(0)
            new = []
            for xj in x:
                # Legendre recurrence up to P_N
                p_prev, p = mpmath.mpf(1), xj
                for k in range(2, N + 1):
                    p_prev, p = p, ((2 * k - 1) * xj * p - (k - 1) * p_prev) / k
                xn = xj - (xj * p - p_prev) / ((N + 1) * p)
                worst = max(worst, abs(xn - xj))
                new.append(xn)
            x = new
            if worst < tol:
                break
        x[0], x[-1] = mpmath.mpf(-1), mpmath.mpf(1)
        return sorted(x)


def _lagrange_integrals(nodes, upper):
    """``int_0^upper`` of each Lagrange basis polynomial on ``nodes`` (mpmath)."""
    n = len(nodes)
    out = []
    for k in range(n):
        coeffs = [mpmath.mpf(1)]
        for m in range(n):
            if m == k:
                continue
            denom = nodes[k] - nodes[m]
            shifted = [mpmath.mpf(0)] * (len(coeffs) + 1)
            for i, c in enumerate(coeffs):
                shifted[i + 1] += c / denom
                shifted[i] -= c * nodes[m] / denom
            coeffs = shifted
        out.append(sum(c * upper ** (i + 1) / (i + 1) for i, c in enumerate(coeffs)))
    return out


@dataclass(frozen=True)
class DeCTableau:
    """Subtimenodes ``tau`` on ``[0, 1]`` and weights ``theta[m, l]``.

    ``theta[m, l] = int_0^{tau_m} psi_l(s) ds`` for the Lagrange basis
    ``psi_l`` on the nodes; row ``0`` is identically zero.
    """

    P: int
    M: int
    nodes: np.ndarray
    theta: np.ndarray


def build_dec_tableau(P: int) -> DeCTableau:
    if not isinstance(P, (int, np.integer)) or not 1 <= P <= 13:
        raise ConfigurationError(f"DeC order must be in 1..13, got {P!r}")
    M = math.ceil(P / 2)
    with mpmath.workdps(_DPS):
        tau = [(x + 1) / 2 for x in gauss_lobatto_nodes(M + 1)]
        theta = [[mpmath.mpf(0)] * (M + 1)] + [_lagrange_integrals(tau, tau[m]) for m in range(1, M + 1)]
        nodes = np.array([float(t) for t in tau])
        theta_f = np.array([[float(v) for v in row] for row in theta])
    return DeCTableau(int(P), M, nodes, theta_f)


def _annotate(err: SimulationError, **ctx) -> SimulationError:
    return err.annotate(**ctx)


def dec_step(
    rhs: RHS,
    u_n: np.ndarray,
    t_n: float,
    dt: float,
    tableau: DeCTableau,
    P: int | None = None,
    autonomous: bool = False,
) -> np.ndarray:
    """One DeC step of order ``P`` (default ``tableau.P``).

    Runs ``P`` explicit correction sweeps on the subtimenode system; every
    sweep evaluates the right-hand side once per subtimenode, the value at
    ``t_n`` being computed once and reused.  When ``autonomous`` is true the
    first sweep reuses it for every node, since all nodes still hold ``u_n``.
    """
    if P is None:
        P = tableau.P
    M = tableau.M
    theta = tableau.theta
    times = t_n + dt * tableau.nodes
    try:
        G0 = rhs(times[0], u_n)
    except SimulationError as err:
        raise _annotate(err, iteration=0, subtimenode=0)

    U = [u_n] * (M + 1)
    G = [G0] * (M + 1)
    for p in range(1, P + 1):
        if p > 1 or not autonomous:
            G = [G0]
            for m in range(1, M + 1):
                try:
                    G.append(rhs(times[m], U[m]))
                except SimulationError as err:
                    raise _annotate(err, iteration=p, subtimenode=m)
        rows = range(1, M + 1) if p < P else (M,)
        U = list(U)
        for m in rows:
            acc = theta[m, 0] * G[0]
            for ell in range(1, M + 1):
                acc = acc + theta[m, ell] * G[ell]
            U[m] = u_n + dt * acc
    return U[M]


@dataclass(frozen=True)
class RKTableau:
    """Explicit Butcher tableau; ``exact`` keeps decimal coefficients when known."""

    name: str
    A: np.ndarray
    b: np.ndarray
    c: np.ndarray
    order: int
    exact: dict | None = field(default=None, compare=False)

    @property
    def stages(self) -> int:
        return len(self.b)


def _tableau(name, A, b, c, order):
    dA = [[Decimal(v) for v in row] for row in A]
    db = [Decimal(v) for v in b]
    dc = [Decimal(v) for v in c]
    n = len(db)
    Af = np.zeros((n, n))
    for i, row in enumerate(dA):
        Af[i, : len(row)] = [float(v) for v in row]
    return RKTableau(
        name,
        Af,
        np.array([float(v) for v in db]),
        np.array([float(v) for v in dc]),
        order,
        exact={"A": dA, "b": db, "c": dc},
    )


SSPRK2 = RKTableau("ssprk2", np.array([[0.0, 0.0], [1.0, 0.0]]), np.array([0.5, 0.5]), np.array([0.0, 1.0]), 2)

SSPRK3 = RKTableau(
    "ssprk3",
    np.array([[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.25, 0.25, 0.0]]),
    np.array([1.0 / 6.0, 1.0 / 6.0, 2.0 / 3.0]),
    np.array([0.0, 1.0, 0.5]),
    3,
)

# SSPRK(5,4), coefficients to 30 digits
SSPRK54 = _tableau(
    "ssprk4",
    [
        [],
        ["0.391752226869253785640632115627"],
        ["0.217669096357834985920253802915", "0.368410592709066783214662112772"],
        [
            "0.0826920866830935842609242437786",
            "0.139958502107426395108400626025",
            "0.251891774371960822884363746140",
        ],
        [
            "0.0679662835740483884329695316049",
            "0.115034698453668419467815057942",
            "0.207034898772936576352392025561",
            "0.544974750295139481064416383368",
        ],
    ],
    [
        "0.146811876157875933686947006683",
        "0.248482909391317264243714136087",
        "0.104258830279481225354037031167",
        "0.274438901048480694917546480567",
        "0.226007483122844881797755345495",
    ],
    [
        "0",
        "0.391752226869253785640632115627",
        "0.586079689066901769134915915687",
        "0.4745423631624808022536886159436",
        "0.9350106310957928653175929984759",
    ],
    4,
)

_RK = {"ssprk2": SSPRK2, "ssprk3": SSPRK3, "ssprk4": SSPRK54}


def rk_tableau(name: str) -> RKTableau:
    try:
        return _RK[name]
    except KeyError:
        raise ConfigurationError(f"unknown Runge-Kutta scheme {name!r}") from None


def rk_step(rhs: RHS, u_n: np.ndarray, t_n: float, dt: float, tableau: RKTableau) -> np.ndarray:
    A, b, c = tableau.A, tableau.b, tableau.c
    k = []
    for i in range(tableau.stages):
        u = u_n
        for j in range(i):
            if A[i, j] != 0.0:
                u = u + (dt * A[i, j]) * k[j]
        try:
            k.append(rhs(t_n + c[i] * dt, u))
        except SimulationError as err:
            raise _annotate(err, stage=i)
    out = u_n
    for i in range(tableau.stages):
        out = out + (dt * b[i]) * k[i]
    return out


def compute_dt(
    values: np.ndarray,
    dx: float,
    equation,
    C_cfl: float,
    mode: str = "standard",
    space_order: int | None = None,
    time_order: int | None = None,
    t: float | None = None,
    t_final: float | None = None,
) -> float:
    """CFL time step from the cell averages ``values`` (interior cells only).

    ``standard``: ``C dx / max s``.  ``modified``: ``C (dx / max s)^(P/R)``
    with ``P = space_order > R = time_order``.  When ``t`` and ``t_final`` are
    given the step is shortened to land on ``t_final`` exactly.
    """
    if not 0.0 < C_cfl:
        raise ConfigurationError("CFL number must be positive")
    s_max = float(np.max(equation.max_speed(values)))
    if not s_max > 0.0 or not math.isfinite(s_max):
        raise ConfigurationError(f"invalid maximum wave speed {s_max}")
    ratio = dx / s_max
    if mode == "standard":
        dt = C_cfl * ratio
    elif mode == "modified":
        if space_order is None or time_order is None or not space_order > time_order:
            raise ConfigurationError("modified CFL needs space_order > time_order")
        dt = C_cfl * ratio ** (space_order / time_order)
    else:
        raise ConfigurationError(f"unknown time-step mode {mode!r}")
    if t is not None and t_final is not None and t + dt >= t_final:
        dt = t_final - t
    return dt
