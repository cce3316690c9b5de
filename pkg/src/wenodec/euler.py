"""Ideal-gas Euler algebra: variable conversions, fluxes and eigenvectors.

Conserved states are arrays whose last axis is ``(rho, rho*u, E)``; primitive
states use ``(rho, u, p)``.  Every function broadcasts over leading axes.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError, NonPhysicalState

__all__ = [
    "EulerParams",
    "prim_to_cons",
    "cons_to_prim",
    "euler_flux",
    "flux_jacobian",
    "sound_speed",
    "max_wave_speed",
    "eigensystem",
    "check_physical",
]


@dataclass(frozen=True)
class EulerParams:
    gamma: float = 1.4

    def __post_init__(self):
        if not self.gamma > 1.0:
            raise ConfigurationError(f"gamma must exceed 1, got {self.gamma}")


def _first_bad(mask: np.ndarray) -> int:
    bad = np.flatnonzero(~mask.ravel())
    return int(bad[0])


def prim_to_cons(w, gamma: float = 1.4) -> np.ndarray:
    w = np.asarray(w, dtype=float)
    rho, u, p = w[..., 0], w[..., 1], w[..., 2]
    ok = rho > 0.0
    if not np.all(ok):
        raise NonPhysicalState("non-positive density", _first_bad(ok))
    out = np.empty_like(w)
    out[..., 0] = rho
    out[..., 1] = rho * u
    out[..., 2] = p / (gamma - 1.0) + 0.5 * rho * u * u
    return out


def cons_to_prim(q, gamma: float = 1.4) -> np.ndarray:
    q = np.asarray(q, dtype=float)
    rho, mom, energy = q[..., 0], q[..., 1], q[..., 2]
    ok = rho > 0.0
    if not np.all(ok):
        raise NonPhysicalState("non-positive density", _first_bad(ok))
    u = mom / rho
    p = (gamma - 1.0) * (energy - 0.5 * mom * u)
    ok = p > 0.0
    if not np.all(ok):
        raise NonPhysicalState("non-positive internal energy", _first_bad(ok))
    out = np.empty_like(q)
    out[..., 0] = rho
    out[..., 1] = u
    out[..., 2] = p
    return out


def check_physical(q, gamma: float = 1.4) -> None:
    """Raise :class:`NonPhysicalState` unless every state has rho > 0 and p > 0."""
    q = np.asarray(q)
    rho = q[..., 0]
    p = (gamma - 1.0) * (q[..., 2] - 0.5 * q[..., 1] ** 2 / rho)
    ok = (rho > 0.0) & (p > 0.0)
    if not ok.all():
        raise NonPhysicalState("non-positive density or pressure", _first_bad(ok))


def sound_speed(w, gamma: float = 1.4) -> np.ndarray:
    w = np.asarray(w, dtype=float)
    return np.sqrt(gamma * w[..., 2] / w[..., 0])


def euler_flux(q, gamma: float = 1.4) -> np.ndarray:
    """Physical flux ``(rho u, rho u^2 + p, (E + p) u)`` of conserved states."""
    q = np.asarray(q, dtype=float)
    rho, mom, energy = q[..., 0], q[..., 1], q[..., 2]
    u = mom / rho
    p = (gamma - 1.0) * (energy - 0.5 * mom * u)
    out = np.empty_like(q)
    out[..., 0] = mom
    out[..., 1] = mom * u + p
    out[..., 2] = (energy + p) * u
    return out


def flux_jacobian(q, gamma: float = 1.4) -> np.ndarray:
    q = np.asarray(q, dtype=float)
    rho, mom, energy = q[..., 0], q[..., 1], q[..., 2]
    u = mom / rho
    g1 = gamma - 1.0
    J = np.zeros(q.shape + (3,))
    J[..., 0, 1] = 1.0
    J[..., 1, 0] = 0.5 * (gamma - 3.0) * u * u
    J[..., 1, 1] = (3.0 - gamma) * u
    J[..., 1, 2] = g1
    J[..., 2, 0] = -gamma * energy * u / rho + g1 * u**3
    J[..., 2, 1] = gamma * energy / rho - 1.5 * g1 * u * u
    J[..., 2, 2] = gamma * u
    return J


def max_wave_speed(q, gamma: float = 1.4) -> np.ndarray:
    """``|u| + c`` per state, validating physicality."""
    w = cons_to_prim(q, gamma)
    return np.abs(w[..., 1]) + sound_speed(w, gamma)


def eigensystem(q, gamma: float = 1.4):
    """Eigenvalues and left/right eigenvector matrices of the flux Jacobian.

    Returns ``(lam, L, R)`` with ``lam = (u - c, u, u + c)``, right
    eigenvectors as the columns of ``R`` and ``L = R^{-1}``.
    """
    w = cons_to_prim(q, gamma)
    rho, u, p = w[..., 0], w[..., 1], w[..., 2]
    c = np.sqrt(gamma * p / rho)
    H = gamma / (gamma - 1.0) * p / rho + 0.5 * u * u
    shape = w.shape[:-1] + (3, 3)

    R = np.empty(shape)
    R[..., 0, :] = 1.0
    R[..., 1, 0] = u - c
    R[..., 1, 1] = u
    R[..., 1, 2] = u + c
    R[..., 2, 0] = H - u * c
    R[..., 2, 1] = 0.5 * u * u
    R[..., 2, 2] = H + u * c

    b1 = (gamma - 1.0) / (c * c)
    b2 = 0.5 * b1 * u * u
    L = np.empty(shape)
    L[..., 0, 0] = 0.5 * (b2 + u / c)
    L[..., 0, 1] = -0.5 * (b1 * u + 1.0 / c)
    L[..., 0, 2] = 0.5 * b1
    L[..., 1, 0] = 1.0 - b2
    L[..., 1, 1] = b1 * u
    L[..., 1, 2] = -b1
    L[..., 2, 0] = 0.5 * (b2 - u / c)
    L[..., 2, 1] = -0.5 * (b1 * u - 1.0 / c)
    L[..., 2, 2] = 0.5 * b1

    lam = np.stack([u - c, u, u + c], axis=-1)
    return lam, L, R
