"""Independent reference implementations used only by the tests.

Nothing here imports the package under test.
"""

from __future__ import annotations

import math

import numpy as np
from scipy import integrate


# -- exact Riemann solver: scalar pressure function, bisection, sampler -------

def side_function(p, rho, pk, gamma):
    c = math.sqrt(gamma * pk / rho)
    if p > pk:
        A = 2.0 / ((gamma + 1.0) * rho)
        B = (gamma - 1.0) / (gamma + 1.0) * pk
        return (p - pk) * math.sqrt(A / (p + B))
    return 2.0 * c / (gamma - 1.0) * ((p / pk) ** ((gamma - 1.0) / (2.0 * gamma)) - 1.0)


def bisection_star(wL, wR, gamma=1.4, rtol=1e-15):
    """``(p*, u*)`` by bisection on the monotone pressure function."""
    rL, uL, pL = map(float, wL)
    rR, uR, pR = map(float, wR)

    def F(p):
        return side_function(p, rL, pL, gamma) + side_function(p, rR, pR, gamma) + (uR - uL)

    lo, hi = 1e-8 * max(pL, pR), 10.0 * max(pL, pR)
    while F(hi) < 0.0:
        hi *= 10.0
    if F(lo) > 0.0:
        lo = 1e-300
    for _ in range(400):
        mid = 0.5 * (lo + hi)
        if F(mid) > 0.0:
            hi = mid
        else:
            lo = mid
        if hi - lo <= rtol * hi:
            break
    p = 0.5 * (lo + hi)
    u = 0.5 * (uL + uR) + 0.5 * (side_function(p, rR, pR, gamma) - side_function(p, rL, pL, gamma))
    return p, u


def sample(wL, wR, xi, gamma=1.4):
    """Primitive state of the self-similar Riemann solution at ``xi``."""
    rL, uL, pL = map(float, wL)
    rR, uR, pR = map(float, wR)
    ps, us = bisection_star(wL, wR, gamma)
    gp, gm = gamma + 1.0, gamma - 1.0
    if xi <= us:
        # left of the contact: look at the left wave
        c = math.sqrt(gamma * pL / rL)
        if ps > pL:
            s = uL - c * math.sqrt(gp / (2 * gamma) * ps / pL + gm / (2 * gamma))
            if xi <= s:
                return rL, uL, pL
            return rL * (ps / pL + gm / gp) / (gm / gp * ps / pL + 1.0), us, ps
        head = uL - c
        tail = us - c * (ps / pL) ** (gm / (2 * gamma))
        if xi <= head:
            return rL, uL, pL
        if xi >= tail:
            return rL * (ps / pL) ** (1.0 / gamma), us, ps
        cf = 2.0 / gp * (c + gm / 2.0 * (uL - xi))
        return (
            rL * (cf / c) ** (2.0 / gm),
            2.0 / gp * (c + gm / 2.0 * uL + xi),
            pL * (cf / c) ** (2.0 * gamma / gm),
        )
    c = math.sqrt(gamma * pR / rR)
    if ps > pR:
        s = uR + c * math.sqrt(gp / (2 * gamma) * ps / pR + gm / (2 * gamma))
        if xi >= s:
            return rR, uR, pR
        return rR * (ps / pR + gm / gp) / (gm / gp * ps / pR + 1.0), us, ps
    head = uR + c
    tail = us + c * (ps / pR) ** (gm / (2 * gamma))
    if xi >= head:
        return rR, uR, pR
    if xi <= tail:
        return rR * (ps / pR) ** (1.0 / gamma), us, ps
    cf = 2.0 / gp * (c - gm / 2.0 * (uR - xi))
    return (
        rR * (cf / c) ** (2.0 / gm),
        2.0 / gp * (-c + gm / 2.0 * uR + xi),
        pR * (cf / c) ** (2.0 * gamma / gm),
    )


def random_riemann_pair(rng, gamma=1.4):
    """Random primitive pair satisfying the pressure-positivity condition."""
    while True:
        rL, rR = rng.uniform(0.05, 10.0, 2)
        uL, uR = rng.uniform(-5.0, 5.0, 2)
        pL, pR = 10.0 ** rng.uniform(-3.0, 3.0, 2)
        cL, cR = math.sqrt(gamma * pL / rL), math.sqrt(gamma * pR / rR)
        if 2.0 / (gamma - 1.0) * (cL + cR) > (uR - uL) * 1.05:
            return np.array([rL, uL, pL]), np.array([rR, uR, pR])


# -- polynomial reconstruction by numerical quadrature ------------------------

def averaging_polynomial(cell_offsets, averages):
    """Coefficients (ascending) of the degree ``len - 1`` polynomial with the
    given averages over unit cells centred at ``cell_offsets``."""
    k = len(cell_offsets)
    V = np.empty((k, k))
    for i, j in enumerate(cell_offsets):
        for m in range(k):
            V[i, m] = ((j + 0.5) ** (m + 1) - (j - 0.5) ** (m + 1)) / (m + 1)
    return np.linalg.solve(V, np.asarray(averages, dtype=float))


def quadrature_beta(cell_offsets, averages):
    """``sum_k int_{-1/2}^{1/2} (d^k p / dx^k)^2 dx`` for the averaging polynomial."""
    coeffs = np.polynomial.Polynomial(averaging_polynomial(cell_offsets, averages))
    total = 0.0
    for k in range(1, len(cell_offsets)):
        dk = coeffs.deriv(k)
        total += integrate.quad(lambda x: dk(x) ** 2, -0.5, 0.5, epsabs=1e-14, epsrel=1e-13)[0]
    return total


def finite_difference_jacobian(f, q, h_rel=1e-6):
    q = np.asarray(q, dtype=float)
    h = h_rel * max(np.linalg.norm(q), 1.0)
    J = np.empty((q.size, q.size))
    for j in range(q.size):
        e = np.zeros_like(q)
        e[j] = h
        J[:, j] = (f(q + e) - f(q - e)) / (2.0 * h)
    return J
