"""Numerical fluxes: LAE upwind, Rusanov and the exact Euler Riemann solver.

The exact solver follows the classical two-nonlinear-wave construction: the
star pressure is the root of ``f_L(p) + f_R(p) + (u_R - u_L)`` with shock and
rarefaction branches, found by a safeguarded Newton iteration started from
the two-rarefaction estimate.  All routines act on batches of states.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NoConvergence, VacuumGenerated
from .euler import cons_to_prim, euler_flux

__all__ = [
    "StarState",
    "upwind_flux_lae",
    "rusanov_flux",
    "pressure_function",
    "exact_riemann_star",
    "sample_riemann",
    "exact_riemann_flux",
    "TIE_TOL",
]

# |wave speed - xi| below this counts as a tie; ties sample the right state
TIE_TOL = 1e-14
NEWTON_TOL = 1e-12
NEWTON_MAXITER = 100


@dataclass(frozen=True)
class StarState:
    p_star: np.ndarray
    u_star: np.ndarray
    rho_star_left: np.ndarray
    rho_star_right: np.ndarray
    left_wave: np.ndarray
    right_wave: np.ndarray
    iterations: int = 0


def upwind_flux_lae(uL, uR, a: float = 1.0):
    """Exact (upwind) flux of ``u_t + a u_x = 0``."""
    return a * (uL if a >= 0 else uR)


def rusanov_flux(uL, uR, equation):
    """Local Lax-Friedrichs flux with the largest local wave speed of both states."""
    uL = np.asarray(uL, dtype=float)
    uR = np.asarray(uR, dtype=float)
    s = np.maximum(equation.max_speed(uL), equation.max_speed(uR))
    fL = equation.flux(uL)
    fR = equation.flux(uR)
    return 0.5 * (fR + fL) - 0.5 * s[..., None] * (uR - uL)


def _split(w):
    w = np.asarray(w, dtype=float)
    return w[..., 0], w[..., 1], w[..., 2]


def pressure_function(p, rho_k, p_k, c_k, gamma: float = 1.4):
    """Value and derivative of one side's contribution ``f_K(p)``."""
    p = np.asarray(p, dtype=float)
    A = 2.0 / ((gamma + 1.0) * rho_k)
    B = (gamma - 1.0) / (gamma + 1.0) * p_k
    shock = p > p_k
    with np.errstate(invalid="ignore", divide="ignore"):
        sq = np.sqrt(A / (p + B))
        f_s = (p - p_k) * sq
        df_s = sq * (1.0 - 0.5 * (p - p_k) / (B + p))
        ratio = p / p_k
        f_r = 2.0 * c_k / (gamma - 1.0) * (ratio ** ((gamma - 1.0) / (2.0 * gamma)) - 1.0)
        df_r = ratio ** (-(gamma + 1.0) / (2.0 * gamma)) / (rho_k * c_k)
    return np.where(shock, f_s, f_r), np.where(shock, df_s, df_r)


def _check_vacuum(uL, uR, cL, cR, gamma):
    ok = 2.0 / (gamma - 1.0) * (cL + cR) > uR - uL
    if not np.all(ok):
        bad = int(np.flatnonzero(~np.ravel(ok))[0])
        raise VacuumGenerated("Riemann data generate vacuum", bad)


def exact_riemann_star(wL, wR, gamma: float = 1.4) -> StarState:
    """Star region of the Riemann problem between primitive states ``wL``, ``wR``."""
    rL, uL, pL = _split(wL)
    rR, uR, pR = _split(wR)
    cL = np.sqrt(gamma * pL / rL)
    cR = np.sqrt(gamma * pR / rR)
    _check_vacuum(uL, uR, cL, cR, gamma)
    du = uR - uL

    z = (gamma - 1.0) / (2.0 * gamma)
    p = ((cL + cR - 0.5 * (gamma - 1.0) * du) / (cL / pL**z + cR / pR**z)) ** (1.0 / z)
    p = np.maximum(p, 1e-8 * np.maximum(pL, pR))

    for it in range(1, NEWTON_MAXITER + 1):
        fL, dfL = pressure_function(p, rL, pL, cL, gamma)
        fR, dfR = pressure_function(p, rR, pR, cR, gamma)
        step = (fL + fR + du) / (dfL + dfR)
        p_new = p - step
        bad = p_new <= 0.0
        while np.any(bad):
            step = np.where(bad, 0.5 * step, step)
            p_new = p - step
            bad = p_new <= 0.0
        change = 2.0 * np.abs(p_new - p) / (p_new + p)
        p = p_new
        if np.all(change < NEWTON_TOL):
            break
    else:
        raise NoConvergence(f"star pressure did not converge in {NEWTON_MAXITER} iterations")

    fL, _ = pressure_function(p, rL, pL, cL, gamma)
    fR, _ = pressure_function(p, rR, pR, cR, gamma)
    u = 0.5 * (uL + uR) + 0.5 * (fR - fL)

    g = (gamma - 1.0) / (gamma + 1.0)
    rho_sL = np.where(
        p > pL, rL * (p / pL + g) / (g * p / pL + 1.0), rL * (p / pL) ** (1.0 / gamma)
    )
    rho_sR = np.where(
        p > pR, rR * (p / pR + g) / (g * p / pR + 1.0), rR * (p / pR) ** (1.0 / gamma)
    )
    return StarState(
        p_star=p,
        u_star=u,
        rho_star_left=rho_sL,
        rho_star_right=rho_sR,
        left_wave=np.where(p > pL, "shock", "rarefaction"),
        right_wave=np.where(p > pR, "shock", "rarefaction"),
        iterations=it,
    )


def sample_riemann(wL, wR, xi, gamma: float = 1.4, star: StarState | None = None) -> np.ndarray:
    """Primitive state of the self-similar solution at ``xi = x / t``.

    ``wL``/``wR`` are primitive states broadcastable against ``xi``.
    """
    rL, uL, pL = _split(wL)
    rR, uR, pR = _split(wR)
    if star is None:
        star = exact_riemann_star(wL, wR, gamma)
    ps, us = star.p_star, star.u_star
    xi = np.asarray(xi, dtype=float)
    cL = np.sqrt(gamma * pL / rL)
    cR = np.sqrt(gamma * pR / rR)
    z = (gamma - 1.0) / (2.0 * gamma)
    g5 = 2.0 / (gamma + 1.0)
    g7 = 0.5 * (gamma - 1.0)
    tol = TIE_TOL

    def left_of(speed):
        return xi < speed - tol

    shape = np.broadcast(rL, rR, xi, ps).shape
    out = np.empty(shape + (3,))

    with np.errstate(invalid="ignore", divide="ignore"):
        # left of the contact
        shock_L = ps > pL
        sL = uL - cL * np.sqrt((gamma + 1.0) / (2.0 * gamma) * ps / pL + z)
        head_L = uL - cL
        tail_L = us - cL * (ps / pL) ** z
        c_fan_L = g5 * (cL + g7 * (uL - xi))
        fan_L = (
            rL * (c_fan_L / cL) ** (2.0 / (gamma - 1.0)),
            g5 * (cL + g7 * uL + xi),
            pL * (c_fan_L / cL) ** (1.0 / z),
        )
        in_L = np.where(shock_L, left_of(sL), left_of(head_L))
        in_fan_L = ~shock_L & ~left_of(head_L) & left_of(tail_L)

        # right of the contact
        shock_R = ps > pR
        sR = uR + cR * np.sqrt((gamma + 1.0) / (2.0 * gamma) * ps / pR + z)
        head_R = uR + cR
        tail_R = us + cR * (ps / pR) ** z
        c_fan_R = g5 * (cR - g7 * (uR - xi))
        fan_R = (
            rR * (c_fan_R / cR) ** (2.0 / (gamma - 1.0)),
            g5 * (-cR + g7 * uR + xi),
            pR * (c_fan_R / cR) ** (1.0 / z),
        )
        in_R = np.where(shock_R, ~left_of(sR), ~left_of(head_R))
        in_fan_R = ~shock_R & left_of(head_R) & ~left_of(tail_R)

    left_side = left_of(us)
    for k, (wl, wsl, fl, wr, wsr, fr) in enumerate(
        zip(
            (rL, uL, pL),
            (star.rho_star_left, us, ps),
            fan_L,
            (rR, uR, pR),
            (star.rho_star_right, us, ps),
            fan_R,
        )
    ):
        left_val = np.where(in_L, wl, np.where(in_fan_L, fl, wsl))
        right_val = np.where(in_R, wr, np.where(in_fan_R, fr, wsr))
        out[..., k] = np.where(left_side, left_val, right_val)
    return out


def _prim_flux(w, gamma):
    rho, u, p = _split(w)
    out = np.empty(np.shape(w))
    out[..., 0] = rho * u
    out[..., 1] = rho * u * u + p
    out[..., 2] = u * (p / (gamma - 1.0) + 0.5 * rho * u * u + p)
    return out


def exact_riemann_flux(uL, uR, gamma: float = 1.4) -> np.ndarray:
    """Godunov flux ``f(u*(0))`` for conserved states ``uL``, ``uR``."""
    wL = cons_to_prim(uL, gamma)
    wR = cons_to_prim(uR, gamma)
    w0 = sample_riemann(wL, wR, 0.0, gamma)
    return _prim_flux(w0, gamma)


def consistency_flux(u, gamma: float = 1.4) -> np.ndarray:
    """Physical Euler flux, re-exported for symmetry with the numerical fluxes."""
    return euler_flux(u, gamma)
