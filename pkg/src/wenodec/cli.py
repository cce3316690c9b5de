"""Command-line front end.

Exit status: 0 on completion, 1 on configuration errors, 2 when a
simulation crashes (the crash report goes to standard error).
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import fields, replace

import numpy as np

from .analysis import (
    convergence_study,
    efficiency_sweep,
    run_errors,
    snapshot_export,
)
from .config import RunConfig, load_config
from .errors import ConfigurationError
from .problems import PROBLEMS, RIEMANN_TESTS, euler_riemann_exact_profile, get_problem
from .riemann import exact_riemann_star
from .solver import SchemeConfig, run_simulation

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_CRASH = 2

# acceptance tables: (problem, order -> refinements, scheme overrides)
TABLES = {
    "lae-dec": (
        "lae-test1",
        {
            3: [160, 320, 640, 1280, 2560, 5120],
            5: [80, 160, 320, 640, 1280, 2560, 5120],
            7: [80, 160, 320, 640, 1280],
            9: [40, 80, 160, 320],
            11: [40, 80, 160],
            13: [40, 80, 160],
        },
        {},
    ),
    "lae-ssprk3": ("lae-test1", {7: [80, 160, 320, 640, 1280, 2560, 5120]}, {"integrator": "ssprk3"}),
    "lae-ssprk4": ("lae-test1", {7: [80, 160, 320, 640, 1280, 2560, 5120]}, {"integrator": "ssprk4"}),
    "lae-mssprk4": ("lae-test1", {7: [80, 160, 320]}, {"integrator": "mssprk4"}),
    "euler-dec": (
        "euler-smooth",
        {
            3: [160, 320, 640, 1280, 2560, 5120],
            5: [80, 160, 320, 640, 1280, 2560],
            7: [80, 160, 320, 640, 1280],
            9: [40, 80, 160, 320],
        },
        {"variables": "characteristic", "flux": "exact"},
    ),
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def _int_list(text: str) -> list:
    try:
        return [int(v) for v in text.replace(" ", "").split(",") if v]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="JSON run configuration; explicit flags override it")
    p.add_argument("--problem", choices=sorted(PROBLEMS))
    p.add_argument("--order", type=int)
    p.add_argument("--flux", choices=["rusanov", "exact-rs", "upwind"])
    p.add_argument("--vars", dest="variables", choices=["cons", "char"])
    p.add_argument("--integrator", choices=["dec", "ssprk3", "ssprk4", "mssprk3", "mssprk4"])
    p.add_argument("--cfl", type=float)
    p.add_argument("--tf", dest="t_final", type=float, help="final time (default: the problem's)")
    p.add_argument("--epsilon-weno", dest="eps_weno", type=float)
    p.add_argument("--out", help="output directory")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="wenodec", description="High-order WENO finite-volume solver")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("run", help="run one simulation and export the final profile")
    _common(p)
    p.add_argument("--cells", type=int)

    p = sub.add_parser("converge", help="convergence study over a refinement list")
    _common(p)
    p.add_argument("--refinements", type=_int_list, help="e.g. 80,160,320")

    p = sub.add_parser("sweep", help="error versus CPU time for several orders")
    _common(p)
    p.add_argument("--refinements", type=_int_list)
    p.add_argument("--orders", type=_int_list, default=[3, 5, 7])
    p.add_argument("--tolerance", type=float, default=1e-16)

    p = sub.add_parser("riemann", help="print the exact star state and a sampled profile")
    p.add_argument("--problem", default="euler-rp1", choices=[k for k in PROBLEMS if k.startswith("euler-rp")])
    p.add_argument("--tf", dest="t_final", type=float)
    p.add_argument("--points", type=int, default=11)
    p.add_argument("--gamma", type=float, default=1.4)
    p.add_argument("--out", help="output directory for the sampled profile")

    p = sub.add_parser("tables", help="regenerate convergence tables used by the acceptance checks")
    p.add_argument("--table", choices=sorted(TABLES), default="lae-dec")
    p.add_argument("--orders", type=_int_list, help="subset of orders to run")
    p.add_argument("--out", help="output directory")
    return parser


def _merged_config(args) -> RunConfig:
    cfg = load_config(args.config) if getattr(args, "config", None) else RunConfig()
    updates = {}
    for f in fields(RunConfig):
        val = getattr(args, f.name, None)
        if val is not None:
            updates[f.name] = val
    if updates.get("flux") == "exact-rs":
        updates["flux"] = "exact"
    return replace(cfg, **updates)


def _outdir(path):
    if path:
        os.makedirs(path, exist_ok=True)
    return path


def _print_report(report, out=None):
    out = out or sys.stdout
    o1, o2, oi = report.orders("L1"), report.orders("L2"), report.orders("Linf")
    print(report.label, file=out)
    print(f"{'N':>6} {'L1':>11} {'O1':>7} {'L2':>11} {'O2':>7} {'Linf':>11} {'Oinf':>7} {'cpu':>9}", file=out)
    fmt_o = lambda o: f"{o:7.3f}" if o is not None else f"{'-':>7}"  # noqa: E731
    for k, r in enumerate(report.rows):
        if not r.completed:
            print(f"{r.n_cells:>6}  crashed", file=out)
            continue
        c = report.component
        print(
            f"{r.n_cells:>6} {r.L1[c]:11.3e} {fmt_o(o1[k])} {r.L2[c]:11.3e} {fmt_o(o2[k])} "
            f"{r.Linf[c]:11.3e} {fmt_o(oi[k])} {r.cpu_seconds:9.3f}",
            file=out,
        )
    print(f"average order (L1): {report.average_order('L1'):.3f}", file=out)


def cmd_run(args) -> int:
    cfg = _merged_config(args)
    problem = cfg.build_problem()
    scheme = cfg.build_scheme(problem)
    n = cfg.cells or 100
    outcome = run_simulation(problem, scheme, n, cfg.t_final)
    if outcome.crashed:
        print(outcome.crash_report(), file=sys.stderr)
        return EXIT_CRASH
    print(f"{scheme.label()} on {problem.name}, N={n}: completed at t={outcome.time:.6g} "
          f"in {outcome.steps} steps ({outcome.wall_clock:.3f} s)")
    if problem.exact is not None:
        L1, L2, Li = run_errors(problem, outcome, scheme.order)
        print("L1 " + " ".join(f"{v:.4e}" for v in L1))
        print("L2 " + " ".join(f"{v:.4e}" for v in L2))
        print("Linf " + " ".join(f"{v:.4e}" for v in Li))
    out = _outdir(cfg.out)
    if out:
        path = os.path.join(out, f"{problem.name}_o{scheme.order}_n{n}.csv")
        snapshot_export(problem, outcome, path)
        print(f"profile written to {path}")
    return EXIT_OK


def cmd_converge(args) -> int:
    cfg = _merged_config(args)
    if not cfg.refinements:
        raise ConfigurationError("converge needs --refinements")
    problem = cfg.build_problem()
    scheme = cfg.build_scheme(problem)
    out = _outdir(cfg.out)
    path = os.path.join(out, f"{problem.name}_o{scheme.order}_convergence.csv") if out else None
    report = convergence_study(problem, scheme, cfg.refinements, cfg.t_final, path)
    _print_report(report)
    if path:
        print(f"table written to {path}")
    crashed = [r.n_cells for r in report.rows if not r.completed]
    if crashed:
        print(f"simulation crashed for N in {crashed}", file=sys.stderr)
        return EXIT_CRASH
    return EXIT_OK


def cmd_sweep(args) -> int:
    cfg = _merged_config(args)
    if not cfg.refinements:
        raise ConfigurationError("sweep needs --refinements")
    problem = cfg.build_problem()
    schemes = [replace(cfg, order=o).build_scheme(problem) for o in args.orders]
    out = _outdir(cfg.out)
    path = os.path.join(out, f"{problem.name}_sweep.csv") if out else None
    res = efficiency_sweep(problem, schemes, cfg.refinements, path, args.tolerance)
    for label, r in res.items():
        pairs = ", ".join(f"{n}:{e:.3e}/{t:.3f}s" for n, e, t in zip(r["N"], r["error"], r["cpu_seconds"]))
        print(f"{label}: {pairs}; expected time to {args.tolerance:g}: {r['expected_time']:.4g} s")
    if path:
        print(f"sweep written to {path}")
    return EXIT_OK


def cmd_riemann(args) -> int:
    key = args.problem.replace("euler-rp", "")
    key = "relaxed2" if key == "2-relaxed" else key
    data = RIEMANN_TESTS[key]
    t = data.t_final if args.t_final is None else args.t_final
    wL, wR = np.array(data.left), np.array(data.right)
    star = exact_riemann_star(wL, wR, args.gamma)
    print(f"{args.problem} ({data.title})")
    print(f"p* = {float(star.p_star):.10g}")
    print(f"u* = {float(star.u_star):.10g}")
    print(f"rho*L = {float(star.rho_star_left):.10g}  ({star.left_wave})")
    print(f"rho*R = {float(star.rho_star_right):.10g}  ({star.right_wave})")
    print(f"Newton iterations: {star.iterations}")
    x = np.linspace(0.0, 1.0, args.points)
    w = euler_riemann_exact_profile(key, x, t, args.gamma)
    lines = ["x,rho,u,p"] + [f"{xi:.6f},{r:.10e},{u:.10e},{p:.10e}" for xi, (r, u, p) in zip(x, w)]
    out = _outdir(args.out)
    if out:
        path = os.path.join(out, f"{args.problem}_exact.csv")
        with open(path, "w") as fh:
            fh.write("\n".join(lines) + "\n")
        print(f"profile written to {path}")
    else:
        print(f"profile at t={t:g}:")
        print("\n".join(lines))
    return EXIT_OK


def cmd_tables(args) -> int:
    pid, plan, overrides = TABLES[args.table]
    problem = get_problem(pid)
    out = _outdir(args.out)
    status = EXIT_OK
    for order, ns in plan.items():
        if args.orders and order not in args.orders:
            continue
        kwargs = {"flux": "upwind" if problem.equation.name == "lae" else "exact", **overrides}
        scheme = SchemeConfig(order=order, equation=problem.equation, **kwargs)
        path = os.path.join(out, f"{args.table}_o{order}.csv") if out else None
        report = convergence_study(problem, scheme, ns, csv_path=path)
        _print_report(report)
        print()
        if any(not r.completed for r in report.rows):
            status = EXIT_CRASH
    return status


COMMANDS = {
    "run": cmd_run,
    "converge": cmd_converge,
    "sweep": cmd_sweep,
    "riemann": cmd_riemann,
    "tables": cmd_tables,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (ConfigurationError, OSError, ValueError) as err:
        print(f"configuration error: {err}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
