"""Method-of-lines driver: semidiscrete right-hand side and time loop.

Simulation failures (non-physical reconstructed states, vacuum in the
Riemann solver) never escape :func:`run_simulation`; they come back as a
crashed :class:`RunOutcome` carrying the cause.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field, replace

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from . import _kernels
from .equations import Euler, LinearAdvection
from .errors import (
    ConfigurationError,
    NoConvergence,
    NonPhysicalState,
    SimulationError,
    VacuumGenerated,
)
from .grid import Grid1D, apply_boundary, cell_average_init, ghost_width_for_order, make_grid
from .riemann import exact_riemann_flux, rusanov_flux
from .timestepping import SSPRK2, build_dec_tableau, compute_dt, dec_step, rk_step, rk_tableau
from .weno import EPS_WENO, reconstruct_field, tables_for_order

__all__ = [
    "SchemeConfig",
    "RunOutcome",
    "make_rhs",
    "semidiscrete_rhs",
    "run_simulation",
    "reference_muscl_run",
    "minmod",
]

ORDERS = (3, 5, 7, 9, 11, 13)
INTEGRATORS = ("dec", "ssprk3", "ssprk4", "mssprk3", "mssprk4")

_ALIASES = {
    "cons": "conserved",
    "conserved": "conserved",
    "char": "characteristic",
    "characteristic": "characteristic",
    "rus": "rusanov",
    "rusanov": "rusanov",
    "exact": "exact",
    "exact-rs": "exact",
    "exact_rs": "exact",
    "ex.rs": "exact",
    "upwind": "upwind",
    "upwind_lae": "upwind",
}


@dataclass(frozen=True)
class SchemeConfig:
    """Spatial order, reconstructed variables, flux, time integrator and CFL."""

    order: int = 5
    variables: str = "conserved"
    flux: str = "upwind"
    integrator: str = "dec"
    cfl: float = 0.95
    equation: object = field(default_factory=LinearAdvection)
    eps_weno: float = EPS_WENO

    def __post_init__(self):
        object.__setattr__(self, "variables", _canon(self.variables, "variables"))
        object.__setattr__(self, "flux", _canon(self.flux, "flux"))
        if self.order not in ORDERS:
            raise ConfigurationError(f"order must be one of {ORDERS}, got {self.order!r}")
        if self.integrator not in INTEGRATORS:
            raise ConfigurationError(f"integrator must be one of {INTEGRATORS}, got {self.integrator!r}")
        if not 0.0 < self.cfl <= 1.0:
            raise ConfigurationError(f"CFL number must lie in (0, 1], got {self.cfl}")
        if not self.eps_weno > 0.0:
            raise ConfigurationError("eps_weno must be positive")
        is_euler = isinstance(self.equation, Euler)
        if self.variables == "characteristic" and not is_euler:
            raise ConfigurationError("characteristic reconstruction requires the Euler equations")
        if self.flux == "upwind" and is_euler:
            raise ConfigurationError("the upwind flux is only defined for linear advection")
        if self.flux == "exact" and not is_euler:
            raise ConfigurationError("the exact Riemann solver flux requires the Euler equations")
        if self.integrator.startswith("mssprk") and not self.order > self.rk_order:
            raise ConfigurationError(
                f"{self.integrator} needs a spatial order above {self.rk_order}, got {self.order}"
            )

    @property
    def rk_order(self) -> int | None:
        if self.integrator == "dec":
            return None
        return int(self.integrator[-1])

    @property
    def radius(self) -> int:
        return (self.order + 1) // 2

    def label(self) -> str:
        integ = {"dec": f"DeC{self.order}"}.get(self.integrator, self.integrator.upper())
        text = f"WENO{self.order}-{integ}"
        if isinstance(self.equation, Euler):
            text += f" {self.variables[:4]}. {'Rus' if self.flux == 'rusanov' else 'Ex.RS'}"
        return text


def _canon(value: str, what: str) -> str:
    try:
        return _ALIASES[str(value).lower()]
    except KeyError:
        raise ConfigurationError(f"unknown {what} option {value!r}") from None


@dataclass
class RunOutcome:
    status: str
    values: np.ndarray
    grid: Grid1D
    time: float
    steps: int
    wall_clock: float
    cause: SimulationError | None = None
    dt_history: list | None = None

    @property
    def completed(self) -> bool:
        return self.status == "completed"

    @property
    def crashed(self) -> bool:
        return self.status == "crashed"

    def crash_report(self) -> str:
        if not self.crashed:
            return "completed"
        c = self.cause
        return (
            f"simulation crashed during step {self.steps + 1}, t={self.time:.6g}: "
            f"{type(c).__name__}: {c}"
        )


def _face_flux(scheme: SchemeConfig, equation):
    if scheme.flux == "upwind":
        a = equation.a
        return lambda uL, uR: a * (uL if a >= 0 else uR)
    if scheme.flux == "rusanov":
        return lambda uL, uR: rusanov_flux(uL, uR, equation)
    gamma = equation.gamma
    return lambda uL, uR: exact_riemann_flux(uL, uR, gamma)


def _shifted_provider(equation):
    # eigensystems are requested for cells -1 .. n; report interior numbering
    def provider(cells):
        try:
            return equation.eigenvectors(cells)
        except NonPhysicalState as err:
            if err.index is not None:
                err.index -= 1
            raise

    return provider


def make_rhs(
    grid: Grid1D, scheme: SchemeConfig, bc, ghost_width: int | None = None, backend: str = "auto"
):
    """Right-hand side ``G(t, u)`` of the semidiscrete scheme on interior averages.

    ``u`` has shape ``(n_cells, n_comp)``; the returned callable fills the
    ghost layers, reconstructs both states at every face, checks them for
    physicality (Euler), applies the numerical flux and returns the flux
    divergence ``-(F_{i+1/2} - F_{i-1/2}) / dx``.

    ``backend`` selects the array implementation (``"numpy"``), the compiled
    per-face loops (``"compiled"``) or the latter when available (``"auto"``).
    """
    if backend not in ("auto", "numpy", "compiled"):
        raise ConfigurationError(f"unknown backend {backend!r}")
    if backend == "compiled" and not _kernels.AVAILABLE:
        raise ConfigurationError("the compiled backend needs numba")
    compiled = backend == "compiled" or (backend == "auto" and _kernels.AVAILABLE)

    equation = scheme.equation
    tables = tables_for_order(scheme.order, scheme.eps_weno)
    g = ghost_width if ghost_width is not None else ghost_width_for_order(scheme.order)
    if g < tables.r:
        raise ConfigurationError(f"ghost width {g} too small for WENO radius {tables.r}")
    n = grid.n_cells
    n_comp = equation.n_comp
    dx = grid.dx
    mode = scheme.variables
    is_euler = isinstance(equation, Euler)
    periodic = (bc[0] if isinstance(bc, tuple) else bc).kind == "periodic"
    buf = np.zeros((n + 2 * g, n_comp))

    if compiled:
        reconstruct = _compiled_reconstruction(tables, mode, equation, g)
        flux = _compiled_flux(scheme, equation)
    else:
        provider = _shifted_provider(equation) if mode == "characteristic" else None
        reconstruct = lambda b: reconstruct_field(b, g, tables, mode, provider)  # noqa: E731
        flux = _face_flux(scheme, equation)

    def rhs(t: float, u: np.ndarray) -> np.ndarray:
        buf[g : g + n] = u
        apply_boundary(buf, bc, g)
        uL, uR = reconstruct(buf)
        if is_euler:
            try:
                equation.check_physical(uL)
                equation.check_physical(uR)
            except NonPhysicalState as err:
                raise err.annotate(where="reconstructed face state")
        F = flux(uL, uR)
        if periodic:
            F[-1] = F[0]
        return (F[:-1] - F[1:]) / dx

    return rhs


def _compiled_reconstruction(tables, mode, equation, g):
    r = tables.r
    CL = np.ascontiguousarray(tables.c_lo["left"])
    CR = np.ascontiguousarray(tables.c_lo["right"])
    rows = tables.beta_rows.reshape(r, r - 1, 2 * r - 1)
    BR = np.ascontiguousarray([rows[ell, :, ell : ell + r] for ell in range(r)])
    dL = np.ascontiguousarray(tables.d["left"])
    dR = np.ascontiguousarray(tables.d["right"])
    char = mode == "characteristic"
    gamma = float(getattr(equation, "gamma", 1.4))
    eps = float(tables.eps_weno)

    def reconstruct(buf):
        nf = buf.shape[0] - 2 * g + 1
        uL = np.empty((nf, buf.shape[1]))
        uR = np.empty((nf, buf.shape[1]))
        bad = _kernels.weno_faces(buf, g, r, CL, CR, BR, dL, dR, eps, char, gamma, uL, uR)
        if bad >= 0:
            raise NonPhysicalState("cell average admits no eigensystem", int(bad) - 1)
        return uL, uR

    return reconstruct


def _compiled_flux(scheme: SchemeConfig, equation):
    if scheme.flux == "upwind":
        return _face_flux(scheme, equation)
    gamma = float(equation.gamma)
    if scheme.flux == "rusanov":

        def rusanov(uL, uR):
            F = np.empty_like(uL)
            _kernels.rusanov_euler(uL, uR, gamma, F)
            return F

        return rusanov

    def godunov(uL, uR):
        F = np.empty_like(uL)
        status, face = _kernels.exact_flux(uL, uR, gamma, F)
        if status == _kernels.VACUUM:
            raise VacuumGenerated("Riemann data generate vacuum", int(face))
        if status == _kernels.NO_CONVERGENCE:
            raise NoConvergence("star pressure did not converge", int(face))
        return F

    return godunov


def semidiscrete_rhs(values: np.ndarray, grid: Grid1D, scheme: SchemeConfig, bc, t: float = 0.0):
    """One-shot evaluation of the semidiscrete operator on interior averages."""
    values = np.asarray(values, dtype=float)
    if values.ndim == 1:
        values = values[:, None]
    return make_rhs(grid, scheme, bc)(t, values)


def _stepper(scheme: SchemeConfig, rhs):
    if scheme.integrator == "dec":
        tab = build_dec_tableau(scheme.order)
        return lambda u, t, dt: dec_step(rhs, u, t, dt, tab, scheme.order, autonomous=True)
    tab = rk_tableau(f"ssprk{scheme.rk_order}")
    return lambda u, t, dt: rk_step(rhs, u, t, dt, tab)


def _time_loop(u, grid, equation, scheme_cfl, step, t_final, dt_kwargs, record_dt=False):
    t = 0.0
    steps = 0
    dts = [] if record_dt else None
    start = time.perf_counter()
    cause = None
    try:
        while t < t_final:
            dt = compute_dt(u, grid.dx, equation, scheme_cfl, t=t, t_final=t_final, **dt_kwargs)
            u_new = step(u, t, dt)
            if not np.all(np.isfinite(u_new)):
                raise NonPhysicalState("non-finite state after time step")
            u = u_new
            steps += 1
            if record_dt:
                dts.append(dt)
            t = t_final if t + dt >= t_final else t + dt
    except SimulationError as err:
        cause = err.annotate(step=steps + 1, time=t)
    wall = time.perf_counter() - start
    return u, t, steps, wall, cause, dts


def run_simulation(
    problem,
    scheme: SchemeConfig,
    n_cells: int,
    t_final: float | None = None,
    record_dt: bool = False,
) -> RunOutcome:
    """Advance the problem's Gauss-Legendre cell averages to ``t_final``.

    Wall-clock time covers the time loop only.
    """
    if type(scheme.equation) is not type(problem.equation):
        scheme = replace(scheme, equation=problem.equation)
    grid = make_grid(problem.x_left, problem.x_right, n_cells)
    t_final = problem.t_final if t_final is None else float(t_final)
    field0 = cell_average_init(grid, problem.initial, scheme.order)
    rhs = make_rhs(grid, scheme, problem.bc, field0.ghost_width)
    step = _stepper(scheme, rhs)
    if scheme.integrator.startswith("mssprk"):
        dt_kwargs = {"mode": "modified", "space_order": scheme.order, "time_order": scheme.rk_order}
    else:
        dt_kwargs = {}
    u, t, steps, wall, cause, dts = _time_loop(
        field0.interior.copy(), grid, scheme.equation, scheme.cfl, step, t_final, dt_kwargs, record_dt
    )
    return RunOutcome(
        "crashed" if cause else "completed", u, grid, t, steps, wall, cause, dts
    )


def minmod(a, b):
    return np.where(a * b > 0.0, np.sign(a) * np.minimum(np.abs(a), np.abs(b)), 0.0)


def _muscl_rhs(grid: Grid1D, equation: Euler, bc, backend: str = "auto"):
    g = 2
    n = grid.n_cells
    dx = grid.dx
    gamma = equation.gamma
    buf = np.zeros((n + 2 * g, 3))
    compiled = backend == "compiled" or (backend == "auto" and _kernels.AVAILABLE)

    def reconstruct_numpy(buf):
        cells = buf[g - 1 : g + n + 1]  # interior plus one ghost each side
        L, R = _shifted_provider(equation)(cells)
        win = sliding_window_view(buf[g - 2 : g + n + 2], 3, axis=0)  # (n + 2, 3, 3)
        w = np.matmul(L, win)
        slope = minmod(w[..., 1] - w[..., 0], w[..., 2] - w[..., 1])
        right = np.matmul(R, (w[..., 1] + 0.5 * slope)[..., None])[..., 0]
        left = np.matmul(R, (w[..., 1] - 0.5 * slope)[..., None])[..., 0]
        return right[:-1], left[1:]

    def reconstruct_compiled(buf):
        uL = np.empty((n + 1, 3))
        uR = np.empty((n + 1, 3))
        bad = _kernels.muscl_faces(buf, g, gamma, uL, uR)
        if bad >= 0:
            raise NonPhysicalState("cell average admits no eigensystem", int(bad) - 1)
        return uL, uR

    reconstruct = reconstruct_compiled if compiled else reconstruct_numpy
    flux = _compiled_flux(SchemeConfig(order=3, flux="exact", equation=equation), equation) if compiled else (
        lambda uL, uR: exact_riemann_flux(uL, uR, gamma)
    )

    def rhs(t, u):
        buf[g : g + n] = u
        apply_boundary(buf, bc, g)
        uL, uR = reconstruct(buf)
        equation.check_physical(uL)
        equation.check_physical(uR)
        F = flux(uL, uR)
        return (F[:-1] - F[1:]) / dx

    return rhs


def reference_muscl_run(
    problem, n_cells: int, C_cfl: float = 0.5, t_final: float | None = None, backend: str = "auto"
) -> RunOutcome:
    """Second-order reference: minmod-limited characteristic MUSCL, exact
    Riemann solver flux and two-stage SSP Runge-Kutta."""
    equation = problem.equation
    if not isinstance(equation, Euler):
        raise ConfigurationError("the MUSCL reference solver handles the Euler equations only")
    grid = make_grid(problem.x_left, problem.x_right, n_cells)
    t_final = problem.t_final if t_final is None else float(t_final)
    u0 = cell_average_init(grid, problem.initial, 3, ghost_width=2).interior.copy()
    rhs = _muscl_rhs(grid, equation, problem.bc, backend)
    step = lambda u, t, dt: rk_step(rhs, u, t, dt, SSPRK2)  # noqa: E731
    u, t, steps, wall, cause, _ = _time_loop(u0, grid, equation, C_cfl, step, t_final, {})
    return RunOutcome("crashed" if cause else "completed", u, grid, t, steps, wall, cause)
