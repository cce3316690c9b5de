"""Error norms, experimental orders, convergence studies and data export."""

from __future__ import annotations

import csv
import math
import os
from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigurationError
from .euler import cons_to_prim
from .grid import Grid1D, cell_averages
from .solver import RunOutcome, SchemeConfig, run_simulation

__all__ = [
    "error_norms",
    "eoc",
    "ErrorRow",
    "ErrorReport",
    "exact_cell_averages",
    "run_errors",
    "reference_distance",
    "convergence_study",
    "efficiency_sweep",
    "expected_time",
    "snapshot_export",
    "write_report_csv",
    "read_report_csv",
]

CSV_COLUMNS = ("N", "L1", "O1", "L2", "O2", "Linf", "Oinf", "cpu_seconds", "status")


def error_norms(numeric, exact, grid: Grid1D):
    """``(L1, L2, Linf)`` per component of the cell-average error.

    Both arguments are ``(n_cells,)`` or ``(n_cells, n_comp)`` arrays of cell
    averages.  ``L1 = sum |e| dx``, ``L2 = sqrt(sum e^2 dx)``, ``Linf = max |e|``.
    """
    e = np.asarray(numeric, dtype=float) - np.asarray(exact, dtype=float)
    if e.ndim == 1:
        e = e[:, None]
    dx = grid.dx
    return (
        np.sum(np.abs(e), axis=0) * dx,
        np.sqrt(np.sum(e * e, axis=0) * dx),
        np.max(np.abs(e), axis=0),
    )


def eoc(e_coarse: float, e_fine: float, ratio: float = 2.0) -> float:
    """Experimental order ``log(e_N / e_2N) / log(ratio)``."""
    if ratio == 2.0:
        return math.log2(e_coarse / e_fine)
    return math.log(e_coarse / e_fine) / math.log(ratio)


def exact_cell_averages(problem, grid: Grid1D, t: float, order: int) -> np.ndarray:
    """Exact cell averages at ``t``, by the initialization rule unless the
    problem asks for a finer one (discontinuous data)."""
    if problem.exact is None:
        raise ConfigurationError(f"problem {problem.name!r} has no exact solution")
    q = max(order, problem.exact_quadrature_order or 0)
    return cell_averages(grid, lambda x: problem.exact(x, t), q)


@dataclass
class ErrorRow:
    n_cells: int
    L1: np.ndarray
    L2: np.ndarray
    Linf: np.ndarray
    cpu_seconds: float
    status: str = "completed"

    @property
    def completed(self) -> bool:
        return self.status == "completed"


@dataclass
class ErrorReport:
    """Per-refinement errors of one scheme; ``component`` picks the column
    used for orders (density for Euler)."""

    label: str
    rows: list = field(default_factory=list)
    component: int = 0

    def _series(self, norm: str):
        return [float(getattr(r, norm)[self.component]) if r.completed else None for r in self.rows]

    def orders(self, norm: str = "L1") -> list:
        """Order between each row and the previous one; ``None`` when undefined."""
        errs = self._series(norm)
        out = [None]
        for k in range(1, len(self.rows)):
            a, b = errs[k - 1], errs[k]
            if (
                a is None
                or b is None
                or self.rows[k].n_cells != 2 * self.rows[k - 1].n_cells
                or not (a > 0 and b > 0)
            ):
                out.append(None)
            else:
                out.append(eoc(a, b))
        return out

    def average_order(self, norm: str = "L1") -> float:
        vals = [o for o in self.orders(norm) if o is not None]
        return float(np.mean(vals)) if vals else float("nan")

    def errors(self, norm: str = "L1") -> list:
        return self._series(norm)


def run_errors(problem, outcome: RunOutcome, order: int):
    exact = exact_cell_averages(problem, outcome.grid, outcome.time, order)
    return error_norms(outcome.values, exact, outcome.grid)


def reference_distance(outcome: RunOutcome, reference: RunOutcome, component: int = 0) -> float:
    """L1 distance to a finer solution averaged onto the coarse cells."""
    n, m = outcome.grid.n_cells, reference.grid.n_cells
    if m % n:
        raise ConfigurationError(f"reference cells ({m}) must be a multiple of {n}")
    coarse = reference.values[:, component].reshape(n, m // n).mean(axis=1)
    return float(np.sum(np.abs(outcome.values[:, component] - coarse)) * outcome.grid.dx)


def convergence_study(
    problem,
    scheme: SchemeConfig,
    refinements,
    t_final: float | None = None,
    csv_path: str | os.PathLike | None = None,
) -> ErrorReport:
    """Run every refinement and collect the error table.

    Crashed refinements become rows with ``status="crashed"`` and NaN
    errors; they break the order chain on both sides.
    """
    report = ErrorReport(scheme.label())
    for n in refinements:
        out = run_simulation(problem, scheme, int(n), t_final)
        if out.completed:
            L1, L2, Li = run_errors(problem, out, scheme.order)
            report.rows.append(ErrorRow(int(n), L1, L2, Li, out.wall_clock))
        else:
            nan = np.full(problem.equation.n_comp, np.nan)
            report.rows.append(ErrorRow(int(n), nan, nan, nan, out.wall_clock, "crashed"))
    if csv_path is not None:
        write_report_csv(report, csv_path)
    return report


def _fmt(v) -> str:
    if v is None:
        return ""
    return f"{v:.16e}"


def write_report_csv(report: ErrorReport, path) -> None:
    o1, o2, oi = report.orders("L1"), report.orders("L2"), report.orders("Linf")
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(CSV_COLUMNS)
        for k, r in enumerate(report.rows):
            c = report.component
            w.writerow(
                [
                    r.n_cells,
                    _fmt(float(r.L1[c])),
                    _fmt(o1[k]),
                    _fmt(float(r.L2[c])),
                    _fmt(o2[k]),
                    _fmt(float(r.Linf[c])),
                    _fmt(oi[k]),
                    _fmt(r.cpu_seconds),
                    r.status,
                ]
            )


def read_report_csv(path, label: str = "") -> ErrorReport:
    """Inverse of :func:`write_report_csv` (orders are recomputed, not read)."""
    report = ErrorReport(label)
    with open(path, newline="") as fh:
        for rec in csv.DictReader(fh):
            vals = [np.array([float(rec[k])]) for k in ("L1", "L2", "Linf")]
            report.rows.append(
                ErrorRow(int(rec["N"]), *vals, float(rec["cpu_seconds"]), rec.get("status") or "completed")
            )
    return report


def expected_time(errors, times, tolerance: float = 1e-16) -> float:
    """Time to reach ``tolerance`` by a least-squares line through the last
    three ``(log error, log time)`` points."""
    e = np.log(np.asarray(errors, dtype=float)[-3:])
    t = np.log(np.asarray(times, dtype=float)[-3:])
    if e.size < 2:
        raise ConfigurationError("expected time needs at least two points")
    slope, intercept = np.polyfit(e, t, 1)
    return float(np.exp(intercept + slope * math.log(tolerance)))


def efficiency_sweep(problem, schemes, refinements, csv_path=None, tolerance: float = 1e-16):
    """Error-versus-time pairs for several schemes plus extrapolated times.

    Returns ``{label: {"N": [...], "error": [...], "cpu_seconds": [...],
    "expected_time": float}}``; the CSV holds one row per run.
    """
    results = {}
    for scheme in schemes:
        rep = convergence_study(problem, scheme, refinements)
        ok = [r for r in rep.rows if r.completed]
        errs = [float(r.L1[rep.component]) for r in ok]
        times = [r.cpu_seconds for r in ok]
        exp_t = expected_time(errs, times, tolerance) if len(ok) >= 2 and min(times) > 0 else float("nan")
        results[rep.label] = {
            "N": [r.n_cells for r in ok],
            "error": errs,
            "cpu_seconds": times,
            "expected_time": exp_t,
        }
    if csv_path is not None:
        with open(csv_path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(("scheme", "N", "error", "cpu_seconds", "expected_time"))
            for label, res in results.items():
                for n, e, t in zip(res["N"], res["error"], res["cpu_seconds"]):
                    w.writerow((label, n, _fmt(e), _fmt(t), _fmt(res["expected_time"])))
    return results


def snapshot_export(problem, outcome: RunOutcome, path, reference: RunOutcome | None = None) -> None:
    """Write cell centers and the solution (primitive for Euler) at the final time.

    Exact-solution columns are added when the problem has one, and
    reference columns (sampled by nearest cell) when ``reference`` is given.
    """
    grid = outcome.grid
    x = grid.centers
    euler = problem.equation.name == "euler"
    gamma = getattr(problem.equation, "gamma", 1.4)
    names = ["x"]
    cols = [x]

    def add(prefix, values):
        if euler:
            w = cons_to_prim(values, gamma)
            for k, nm in enumerate(("rho", "u", "p")):
                names.append(f"{prefix}{nm}")
                cols.append(w[:, k])
        else:
            names.append(f"{prefix}u")
            cols.append(np.asarray(values)[:, 0])

    add("", outcome.values)
    if problem.exact is not None:
        q = max(9, problem.exact_quadrature_order or 0)
        add("exact_", cell_averages(grid, lambda s: problem.exact(s, outcome.time), q))
    if reference is not None:
        idx = np.clip(np.searchsorted(reference.grid.faces, x) - 1, 0, reference.grid.n_cells - 1)
        add("ref_", reference.values[idx])
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(names)
        for row in np.column_stack(cols):
            w.writerow([f"{v:.16e}" for v in row])
