"""WENO reconstruction of odd order ``2r - 1`` at the two faces of a cell.

All stencil coefficients are derived on a reference mesh of unit spacing by
differentiating the Lagrange interpolant of the primitive function, using
exact rational arithmetic, and only then rounded to double precision.  The
tables are therefore free of transcription errors for every ``r`` in 2..7.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from .errors import ConfigurationError

__all__ = [
    "EPS_WENO",
    "WenoTables",
    "build_weno_tables",
    "tables_for_order",
    "reconstruction_coefficients",
    "smoothness_indicators",
    "nonlinear_weights",
    "reconstruct_interface",
    "reconstruct_windows",
    "reconstruct_field",
]

EPS_WENO = 1e-6

R_MIN, R_MAX = 2, 7
SIDES = ("left", "right")


# -- exact polynomial helpers (ascending Fraction coefficients) --------------

def _pmul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return out


def _padd(a, b):
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)]


def _pderiv(a):
    return [i * a[i] for i in range(1, len(a))] or [Fraction(0)]


def _peval(a, x):
    acc = Fraction(0)
    for c in reversed(a):
        acc = acc * x + c
    return acc


def _pint(a, lo, hi):
    return sum(c * (hi ** (i + 1) - lo ** (i + 1)) / (i + 1) for i, c in enumerate(a))


def _lagrange_basis(nodes):
    basis = []
    for k, xk in enumerate(nodes):
        poly = [Fraction(1)]
        for m, xm in enumerate(nodes):
            if m != k:
                poly = _pmul(poly, [-xm / (xk - xm), 1 / (xk - xm)])
        basis.append(poly)
    return basis


def _cell_polynomials(offsets: Sequence[int]):
    """Reconstruction polynomial attached to each cell of a stencil.

    For unit cells centred at ``offsets`` (contiguous), the primitive is
    interpolated at the ``len(offsets) + 1`` interfaces; the derivative of the
    interpolant is ``sum_j qbar_j * p_j(x)`` with ``p_j = sum_{k > j} phi_k'``.
    """
    s = offsets[0]
    nodes = [Fraction(2 * s - 1, 2) + k for k in range(len(offsets) + 1)]
    dphi = [_pderiv(b) for b in _lagrange_basis(nodes)]
    polys = []
    for j in range(len(offsets)):
        acc = [Fraction(0)]
        for k in range(j + 1, len(nodes)):
            acc = _padd(acc, dphi[k])
        polys.append(acc)
    return polys


def reconstruction_coefficients(offsets: Sequence[int], x: Fraction) -> list[Fraction]:
    """Exact weights mapping the stencil's cell averages to the value at ``x``.

    ``x`` is measured in cell widths from the centre of the reconstructed cell.
    """
    return [_peval(p, Fraction(x)) for p in _cell_polynomials(list(offsets))]


def _smoothness_form(r: int) -> list[list[list[Fraction]]]:
    """Exact matrices ``B[l]`` with ``beta_l = a^T B[l] a`` on small stencil ``l``.

    The derivatives of the stencil polynomial are integrated over the central
    cell ``[-1/2, 1/2]``; with unit spacing the ``dx^(2k-1)`` scaling is 1.
    """
    forms = []
    for ell in range(r):
        derivs = _cell_polynomials(list(range(-(r - 1) + ell, ell + 1)))
        B = [[Fraction(0)] * r for _ in range(r)]
        for _ in range(1, r):
            derivs = [_pderiv(p) for p in derivs]
            for a in range(r):
                for b in range(a, r):
                    val = _pint(_pmul(derivs[a], derivs[b]), Fraction(-1, 2), Fraction(1, 2))
                    B[a][b] += val
                    if a != b:
                        B[b][a] += val
        forms.append(B)
    return forms


def _ldl_rows(B: list[list[Fraction]]) -> np.ndarray:
    """Rows ``w_j`` with ``B = sum_j w_j w_j^T`` from an exact LDL^T factorisation."""
    n = len(B)
    A = [row[:] for row in B]
    Lm = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    D = [Fraction(0)] * n
    for j in range(n):
        D[j] = A[j][j] - sum(Lm[j][k] ** 2 * D[k] for k in range(j))
        for i in range(j + 1, n):
            s = A[i][j] - sum(Lm[i][k] * Lm[j][k] * D[k] for k in range(j))
            if D[j] == 0:
                if s != 0:
                    raise ArithmeticError("smoothness form is not positive semidefinite")
                Lm[i][j] = Fraction(0)
            else:
                Lm[i][j] = s / D[j]
    if any(d < 0 for d in D):
        raise ArithmeticError("smoothness form is not positive semidefinite")
    rows = [
        np.sqrt(float(D[j])) * np.array([float(Lm[i][j]) for i in range(n)])
        for j in range(n)
        if D[j] > 0
    ]
    return np.array(rows)


@dataclass(frozen=True)
class WenoTables:
    """Coefficients of the WENO reconstruction of order ``2r - 1``.

    Indices into a big window run ``0 .. 2r - 2`` for the cells
    ``i - (r - 1) .. i + (r - 1)``; small stencil ``l`` reads window entries
    ``l .. l + r - 1``.  Dictionaries are keyed by side, ``"left"`` being the
    face ``x_{i-1/2}`` and ``"right"`` the face ``x_{i+1/2}``.
    """

    r: int
    c_ho: dict
    c_lo: dict
    d: dict
    B: np.ndarray
    beta_rows: np.ndarray
    eps_weno: float = EPS_WENO
    exact: dict | None = None

    @property
    def order(self) -> int:
        return 2 * self.r - 1

    @property
    def width(self) -> int:
        return 2 * self.r - 1

    def embedded_lo(self, side: str) -> np.ndarray:
        """Small-stencil coefficients placed in the big window, shape ``(r, 2r - 1)``."""
        r = self.r
        E = np.zeros((r, 2 * r - 1))
        for ell in range(r):
            E[ell, ell : ell + r] = self.c_lo[side][ell]
        return E

    def with_eps(self, eps: float) -> "WenoTables":
        if not eps > 0:
            raise ConfigurationError("eps_weno must be positive")
        return WenoTables(self.r, self.c_ho, self.c_lo, self.d, self.B, self.beta_rows, eps, self.exact)


@lru_cache(maxsize=None)
def _exact_tables(r: int):
    big = list(range(-(r - 1), r))
    smalls = [list(range(-(r - 1) + ell, ell + 1)) for ell in range(r)]
    faces = {"left": Fraction(-1, 2), "right": Fraction(1, 2)}
    c_ho, c_lo, d = {}, {}, {}
    for side, x in faces.items():
        ho = reconstruction_coefficients(big, x)
        lo = [reconstruction_coefficients(s, x) for s in smalls]
        # c_ho[p] = sum_{l <= p} d_l c_lo[l][p - l] for p < r: triangular in d
        weights = []
        for p in range(r):
            acc = ho[p] - sum(weights[ell] * lo[ell][p - ell] for ell in range(p))
            if lo[p][0] == 0:
                raise ArithmeticError(f"linear weights undetermined for r={r}, {side} face")
            weights.append(acc / lo[p][0])
        for p in range(2 * r - 1):
            combo = sum(weights[ell] * lo[ell][p - ell] for ell in range(r) if 0 <= p - ell < r)
            if combo != ho[p]:
                raise ArithmeticError(f"linear weights do not exist for r={r}, {side} face")
        c_ho[side], c_lo[side], d[side] = ho, lo, weights
    B = _smoothness_form(r)
    return c_ho, c_lo, d, B


def build_weno_tables(r: int, eps_weno: float = EPS_WENO) -> WenoTables:
    if not isinstance(r, (int, np.integer)) or not R_MIN <= r <= R_MAX:
        raise ConfigurationError(f"WENO radius must be in {R_MIN}..{R_MAX}, got {r!r}")
    return _tables(int(r)).with_eps(eps_weno)


@lru_cache(maxsize=None)
def _tables(r: int) -> WenoTables:
    c_ho, c_lo, d, B = _exact_tables(r)
    to_f = lambda seq: np.array([float(v) for v in seq])  # noqa: E731
    B_f = np.array([[[float(v) for v in row] for row in Bl] for Bl in B])
    rows = np.zeros((r, r - 1, 2 * r - 1))
    for ell in range(r):
        w = _ldl_rows(B[ell])
        rows[ell, : w.shape[0], ell : ell + r] = w
    return WenoTables(
        r=r,
        c_ho={s: to_f(c_ho[s]) for s in SIDES},
        c_lo={s: np.array([to_f(v) for v in c_lo[s]]) for s in SIDES},
        d={s: to_f(d[s]) for s in SIDES},
        B=B_f,
        beta_rows=rows.reshape(r * (r - 1), 2 * r - 1),
        exact={"c_ho": c_ho, "c_lo": c_lo, "d": d, "B": B},
    )


def tables_for_order(order: int, eps_weno: float = EPS_WENO) -> WenoTables:
    if order % 2 == 0:
        raise ConfigurationError(f"WENO order must be odd, got {order}")
    return build_weno_tables((order + 1) // 2, eps_weno)


def smoothness_indicators(window, tables: WenoTables) -> np.ndarray:
    """``beta_l`` for every small stencil of a ``2r - 1`` window (unit-free).

    ``window`` may carry leading batch axes; the last axis is the window.
    """
    window = np.asarray(window, dtype=float)
    r = tables.r
    if window.shape[-1] != 2 * r - 1:
        raise ConfigurationError(f"window must have {2 * r - 1} cells")
    proj = window @ tables.beta_rows.T
    proj = proj.reshape(window.shape[:-1] + (r, r - 1))
    return np.einsum("...k,...k->...", proj, proj)


def nonlinear_weights(beta, d, eps: float = EPS_WENO) -> np.ndarray:
    """``omega_l = alpha_l / sum alpha`` with ``alpha_l = d_l / (beta_l + eps)^2``."""
    beta = np.asarray(beta, dtype=float)
    alpha = np.asarray(d, dtype=float) / (beta + eps) ** 2
    return alpha / alpha.sum(axis=-1, keepdims=True)


def reconstruct_windows(windows, tables: WenoTables, linear: bool = False):
    """WENO values at both faces for a batch of windows.

    ``windows`` has shape ``(..., 2r - 1)``.  Returns ``(left, right)``, each of
    shape ``(...)``.  With ``linear=True`` the linear weights are used, which
    reproduces the big-stencil reconstruction.
    """
    windows = np.asarray(windows, dtype=float)
    lo_left = windows @ _embedded(tables, "left").T
    lo_right = windows @ _embedded(tables, "right").T
    if linear:
        wl, wr = tables.d["left"], tables.d["right"]
    else:
        beta = smoothness_indicators(windows, tables)
        wl = nonlinear_weights(beta, tables.d["left"], tables.eps_weno)
        wr = nonlinear_weights(beta, tables.d["right"], tables.eps_weno)
    left = np.sum(wl * lo_left, axis=-1)
    right = np.sum(wr * lo_right, axis=-1)
    return left, right


_EMBED_CACHE: dict = {}


def _embedded(tables: WenoTables, side: str) -> np.ndarray:
    key = (tables.r, side)
    E = _EMBED_CACHE.get(key)
    if E is None:
        E = _EMBED_CACHE[key] = tables.embedded_lo(side)
    return E


def reconstruct_interface(window, tables: WenoTables, side: str = "right") -> float:
    """WENO value of one cell at its ``side`` face from its ``2r - 1`` window."""
    if side not in SIDES:
        raise ConfigurationError(f"side must be 'left' or 'right', got {side!r}")
    left, right = reconstruct_windows(window, tables)
    return float(right if side == "right" else left)


EigenProvider = Callable[[np.ndarray], tuple]


def reconstruct_field(
    values: np.ndarray,
    ghost_width: int,
    tables: WenoTables,
    mode: str = "conserved",
    eigensystem_provider: EigenProvider | None = None,
):
    """Left and right states at every face of the interior.

    ``values`` is the ghost-filled ``(n + 2g, n_comp)`` array.  Returns
    ``(uL, uR)`` of shape ``(n + 1, n_comp)``: face ``k`` separates interior
    cells ``k - 1`` and ``k``, ``uL`` comes from cell ``k - 1`` and ``uR`` from
    cell ``k``.  In ``characteristic`` mode every window is projected with the
    left eigenvectors frozen at its central cell, reconstructed componentwise
    and mapped back with the matching right eigenvectors.
    """
    r = tables.r
    g = ghost_width
    if g < r:
        raise ConfigurationError(f"ghost width {g} too small for WENO radius {r}")
    values = np.asarray(values, dtype=float)
    if values.ndim == 1:
        values = values[:, None]
    n = values.shape[0] - 2 * g
    span = values[g - r : g + n + r]
    win = sliding_window_view(span, 2 * r - 1, axis=0)  # (n + 2, comp, 2r - 1)

    if mode == "conserved":
        left, right = reconstruct_windows(win, tables)
    elif mode == "characteristic":
        if eigensystem_provider is None:
            raise ConfigurationError("characteristic reconstruction needs an eigensystem provider")
        center = values[g - 1 : g + n + 1]
        Lm, Rm = eigensystem_provider(center)
        cw = np.matmul(Lm, win)
        left, right = reconstruct_windows(cw, tables)
        left = np.matmul(Rm, left[..., None])[..., 0]
        right = np.matmul(Rm, right[..., None])[..., 0]
    else:
        raise ConfigurationError(f"unknown reconstruction mode {mode!r}")
    return right[:-1], left[1:]
