"""Compiled per-face loops for the semidiscrete operator.

These mirror the array implementations in :mod:`wenodec.weno` and
:mod:`wenodec.riemann` one face at a time so that large runs avoid the
temporaries of the vectorised code.  The array versions stay the reference;
the test suite checks both paths agree.  Errors are reported through a
status code plus index because exceptions cannot cross the compiled
boundary with context.
"""

from __future__ import annotations

import math

import numpy as np

try:
    from numba import njit
except ImportError:  # pragma: no cover - exercised only without numba
    njit = None

AVAILABLE = njit is not None

OK = 0
VACUUM = 2
NO_CONVERGENCE = 3

NEWTON_TOL = 1e-12
NEWTON_MAXITER = 100
TIE_TOL = 1e-14


def _jit(fn):
    return njit(cache=True, fastmath=False)(fn) if AVAILABLE else fn


@_jit
def _eigvecs(q, gamma, L, R):
    rho = q[0]
    u = q[1] / rho
    p = (gamma - 1.0) * (q[2] - 0.5 * q[1] * u)
    c = math.sqrt(gamma * p / rho)
    H = gamma / (gamma - 1.0) * p / rho + 0.5 * u * u
    R[0, 0] = 1.0
    R[0, 1] = 1.0
    R[0, 2] = 1.0
    R[1, 0] = u - c
    R[1, 1] = u
    R[1, 2] = u + c
    R[2, 0] = H - u * c
    R[2, 1] = 0.5 * u * u
    R[2, 2] = H + u * c
    b1 = (gamma - 1.0) / (c * c)
    b2 = 0.5 * b1 * u * u
    L[0, 0] = 0.5 * (b2 + u / c)
    L[0, 1] = -0.5 * (b1 * u + 1.0 / c)
    L[0, 2] = 0.5 * b1
    L[1, 0] = 1.0 - b2
    L[1, 1] = b1 * u
    L[1, 2] = -b1
    L[2, 0] = 0.5 * (b2 - u / c)
    L[2, 1] = -0.5 * (b1 * u - 1.0 / c)
    L[2, 2] = 0.5 * b1


@_jit
def weno_faces(buf, g, r, CL, CR, BR, dL, dR, eps, char, gamma, uL, uR):
    """Fill ``uL``/``uR`` (``(n + 1, nc)``) from the ghost-filled ``buf``.

    ``CL``/``CR`` hold the ``(r, r)`` small-stencil coefficients of each face
    and ``BR`` the ``(r, r - 1, r)`` factor rows of the smoothness forms;
    stencil ``l`` reads window entries ``l .. l + r - 1``.

    Returns -1 on success, otherwise the position ``j`` in the extended cell
    range ``-1 .. n`` (``j - 1`` is the cell index, ghosts included) of the
    first state that admits no eigensystem.
    """
    n = buf.shape[0] - 2 * g
    nc = buf.shape[1]
    W = 2 * r - 1
    win = np.empty((nc, W))
    L = np.empty((nc, nc))
    R = np.empty((nc, nc))
    beta = np.empty(r)
    recL = np.empty(nc)
    recR = np.empty(nc)
    for j in range(n + 2):
        c = g - 1 + j
        s0 = c - (r - 1)
        if char:
            q = buf[c]
            rho = q[0]
            p = (gamma - 1.0) * (q[2] - 0.5 * q[1] * q[1] / rho)
            if not (rho > 0.0 and p > 0.0):
                return j
            _eigvecs(q, gamma, L, R)
            for k in range(nc):
                for s in range(W):
                    acc = 0.0
                    for m in range(nc):
                        acc += L[k, m] * buf[s0 + s, m]
                    win[k, s] = acc
        else:
            for k in range(nc):
                for s in range(W):
                    win[k, s] = buf[s0 + s, k]
        for k in range(nc):
            for ell in range(r):
                b = 0.0
                for m in range(r - 1):
                    acc = 0.0
                    for s in range(r):
                        acc += BR[ell, m, s] * win[k, ell + s]
                    b += acc * acc
                beta[ell] = b
            sa_l = 0.0
            sa_r = 0.0
            for ell in range(r):
                den = (beta[ell] + eps) * (beta[ell] + eps)
                sa_l += dL[ell] / den
                sa_r += dR[ell] / den
            vl = 0.0
            vr = 0.0
            for ell in range(r):
                den = (beta[ell] + eps) * (beta[ell] + eps)
                lo_l = 0.0
                lo_r = 0.0
                for s in range(r):
                    lo_l += CL[ell, s] * win[k, ell + s]
                    lo_r += CR[ell, s] * win[k, ell + s]
                vl += (dL[ell] / den / sa_l) * lo_l
                vr += (dR[ell] / den / sa_r) * lo_r
            recL[k] = vl
            recR[k] = vr
        for k in range(nc):
            if char:
                al = 0.0
                ar = 0.0
                for m in range(nc):
                    al += R[k, m] * recL[m]
                    ar += R[k, m] * recR[m]
            else:
                al = recL[k]
                ar = recR[k]
            if j < n + 1:
                uL[j, k] = ar
            if j >= 1:
                uR[j - 1, k] = al
    return -1


@_jit
def _pfun(p, rk, pk, ck, gamma):
    if p > pk:
        A = 2.0 / ((gamma + 1.0) * rk)
        B = (gamma - 1.0) / (gamma + 1.0) * pk
        sq = math.sqrt(A / (p + B))
        return (p - pk) * sq, sq * (1.0 - 0.5 * (p - pk) / (B + p))
    ratio = p / pk
    f = 2.0 * ck / (gamma - 1.0) * (ratio ** ((gamma - 1.0) / (2.0 * gamma)) - 1.0)
    df = ratio ** (-(gamma + 1.0) / (2.0 * gamma)) / (rk * ck)
    return f, df


@_jit
def _godunov_state(rL, uL, pL, rR, uR, pR, gamma, out):
    """Primitive state at ``x/t = 0``; returns a status code."""
    cL = math.sqrt(gamma * pL / rL)
    cR = math.sqrt(gamma * pR / rR)
    du = uR - uL
    if not 2.0 / (gamma - 1.0) * (cL + cR) > du:
        return VACUUM
    z = (gamma - 1.0) / (2.0 * gamma)
    p = ((cL + cR - 0.5 * (gamma - 1.0) * du) / (cL / pL**z + cR / pR**z)) ** (1.0 / z)
    p = max(p, 1e-8 * max(pL, pR))
    converged = False
    for _ in range(NEWTON_MAXITER):
        fL, dfL = _pfun(p, rL, pL, cL, gamma)
        fR, dfR = _pfun(p, rR, pR, cR, gamma)
        step = (fL + fR + du) / (dfL + dfR)
        p_new = p - step
        while p_new <= 0.0:
            step *= 0.5
            p_new = p - step
        change = 2.0 * abs(p_new - p) / (p_new + p)
        p = p_new
        if change < NEWTON_TOL:
            converged = True
            break
    if not converged:
        return NO_CONVERGENCE
    fL, _ = _pfun(p, rL, pL, cL, gamma)
    fR, _ = _pfun(p, rR, pR, cR, gamma)
    us = 0.5 * (uL + uR) + 0.5 * (fR - fL)
    gm = (gamma - 1.0) / (gamma + 1.0)
    g5 = 2.0 / (gamma + 1.0)
    g7 = 0.5 * (gamma - 1.0)
    xi = 0.0
    if xi < us - TIE_TOL:
        if p > pL:
            sL = uL - cL * math.sqrt((gamma + 1.0) / (2.0 * gamma) * p / pL + z)
            if xi < sL - TIE_TOL:
                out[0], out[1], out[2] = rL, uL, pL
            else:
                out[0], out[1], out[2] = rL * (p / pL + gm) / (gm * p / pL + 1.0), us, p
        else:
            if xi < uL - cL - TIE_TOL:
                out[0], out[1], out[2] = rL, uL, pL
            elif xi < us - cL * (p / pL) ** z - TIE_TOL:
                cf = g5 * (cL + g7 * (uL - xi))
                out[0] = rL * (cf / cL) ** (2.0 / (gamma - 1.0))
                out[1] = g5 * (cL + g7 * uL + xi)
                out[2] = pL * (cf / cL) ** (1.0 / z)
            else:
                out[0], out[1], out[2] = rL * (p / pL) ** (1.0 / gamma), us, p
    else:
        if p > pR:
            sR = uR + cR * math.sqrt((gamma + 1.0) / (2.0 * gamma) * p / pR + z)
            if not xi < sR - TIE_TOL:
                out[0], out[1], out[2] = rR, uR, pR
            else:
                out[0], out[1], out[2] = rR * (p / pR + gm) / (gm * p / pR + 1.0), us, p
        else:
            if not xi < uR + cR - TIE_TOL:
                out[0], out[1], out[2] = rR, uR, pR
            elif not xi < us + cR * (p / pR) ** z - TIE_TOL:
                cf = g5 * (cR - g7 * (uR - xi))
                out[0] = rR * (cf / cR) ** (2.0 / (gamma - 1.0))
                out[1] = g5 * (-cR + g7 * uR + xi)
                out[2] = pR * (cf / cR) ** (1.0 / z)
            else:
                out[0], out[1], out[2] = rR * (p / pR) ** (1.0 / gamma), us, p
    return OK


@_jit
def exact_flux(UL, UR, gamma, F):
    """Godunov flux at every face; returns ``(status, face)``."""
    w = np.empty(3)
    for i in range(UL.shape[0]):
        rL = UL[i, 0]
        uL = UL[i, 1] / rL
        pL = (gamma - 1.0) * (UL[i, 2] - 0.5 * UL[i, 1] * uL)
        rR = UR[i, 0]
        uR = UR[i, 1] / rR
        pR = (gamma - 1.0) * (UR[i, 2] - 0.5 * UR[i, 1] * uR)
        status = _godunov_state(rL, uL, pL, rR, uR, pR, gamma, w)
        if status != OK:
            return status, i
        rho, u, p = w[0], w[1], w[2]
        F[i, 0] = rho * u
        F[i, 1] = rho * u * u + p
        F[i, 2] = u * (p / (gamma - 1.0) + 0.5 * rho * u * u + p)
    return OK, -1


@_jit
def rusanov_euler(UL, UR, gamma, F):
    for i in range(UL.shape[0]):
        rL = UL[i, 0]
        uL = UL[i, 1] / rL
        pL = (gamma - 1.0) * (UL[i, 2] - 0.5 * UL[i, 1] * uL)
        rR = UR[i, 0]
        uR = UR[i, 1] / rR
        pR = (gamma - 1.0) * (UR[i, 2] - 0.5 * UR[i, 1] * uR)
        s = max(abs(uL) + math.sqrt(gamma * pL / rL), abs(uR) + math.sqrt(gamma * pR / rR))
        fL0 = UL[i, 1]
        fL1 = UL[i, 1] * uL + pL
        fL2 = (UL[i, 2] + pL) * uL
        fR0 = UR[i, 1]
        fR1 = UR[i, 1] * uR + pR
        fR2 = (UR[i, 2] + pR) * uR
        F[i, 0] = 0.5 * (fL0 + fR0) - 0.5 * s * (UR[i, 0] - UL[i, 0])
        F[i, 1] = 0.5 * (fL1 + fR1) - 0.5 * s * (UR[i, 1] - UL[i, 1])
        F[i, 2] = 0.5 * (fL2 + fR2) - 0.5 * s * (UR[i, 2] - UL[i, 2])


@_jit
def muscl_faces(buf, g, gamma, uL, uR):
    """Minmod-limited characteristic MUSCL states at every interior face.

    Same layout and return convention as :func:`weno_faces` with ``r = 2``.
    """
    n = buf.shape[0] - 2 * g
    L = np.empty((3, 3))
    R = np.empty((3, 3))
    w = np.empty((3, 3))
    half = np.empty(3)
    for j in range(n + 2):
        c = g - 1 + j
        q = buf[c]
        rho = q[0]
        p = (gamma - 1.0) * (q[2] - 0.5 * q[1] * q[1] / rho)
        if not (rho > 0.0 and p > 0.0):
            return j
        _eigvecs(q, gamma, L, R)
        for k in range(3):
            for s in range(3):
                acc = 0.0
                for m in range(3):
                    acc += L[k, m] * buf[c - 1 + s, m]
                w[k, s] = acc
        for k in range(3):
            a = w[k, 1] - w[k, 0]
            b = w[k, 2] - w[k, 1]
            if a * b > 0.0:
                half[k] = 0.5 * (a if abs(a) < abs(b) else b)
            else:
                half[k] = 0.0
        for k in range(3):
            ar = 0.0
            al = 0.0
            for m in range(3):
                ar += R[k, m] * (w[m, 1] + half[m])
                al += R[k, m] * (w[m, 1] - half[m])
            if j < n + 1:
                uL[j, k] = ar
            if j >= 1:
                uR[j - 1, k] = al
    return -1
