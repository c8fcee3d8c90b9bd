"""Command-line harness.

Subcommands expose the quadrature rules, Hermite-function tables, the
interpolation operator and every experiment, all with reproducible seeds
and CSV/JSON emission.  When a report is written to a file the same path
also receives a rendered log-log figure (suppress with --no-plot).  Exit
codes: 0 success, 1 numerical failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from pathlib import Path

import numpy as np

from .errors import CapacityError, DomainError, NumericalError, ShapeError, UsageError
from .experiments import (DEFAULT_N_LIST, counterexample_growth, expansion_convergence,
                          hermite_norm_growth, hilbert_matrix_norms,
                          hilbert_section_deviation, interpolation_convergence,
                          kernel_bound_scan, kernel_bound_scan_discrete,
                          kernel_diagonal_growth, mz_ratio_sweep, mz_witness_hn)
from .function_space import FunctionHandle, NormSpec
from .gauss_hermite import build_rule
from .hermite_core import hermite_pair, hermite_sequence
from .interpolation import NodeValues, interpolate
from .reporting import (render_report_figure, report_to_csv, report_to_json,
                        resolve_out_path, rule_to_csv, table_to_csv, write_report)

_USAGE_ERRORS = (UsageError, DomainError, ShapeError, CapacityError)


def _int_list(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad integer list {text!r}") from exc


def _common_output_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--format", choices=("csv", "json"), default="csv")
    sub.add_argument("--out", help="output path (default: stdout; env "
                                   "HERMITE_MZ_OUT_DIR prefixes bare names)")
    sub.add_argument("--no-plot", action="store_true",
                     help="skip the PNG figure next to a written report")


def _experiment_flags(sub: argparse.ArgumentParser, n_flag: bool = True) -> None:
    _common_output_flags(sub)
    if n_flag:
        sub.add_argument("--n-list", type=_int_list,
                         default=list(DEFAULT_N_LIST), metavar="N1,N2,...")
    sub.add_argument("--threads", type=int, default=os.cpu_count() or 1)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hermite-mz",
        description="Gauss-Hermite quadrature, weighted interpolation and "
                    "discrete-vs-continuous norm experiments")
    subs = parser.add_subparsers(dest="command", required=True)

    sub = subs.add_parser("nodes", help="dump rule nodes and weights")
    sub.add_argument("--n", type=int, required=True)
    _common_output_flags(sub)

    sub = subs.add_parser("eval", help="table of a Hermite function and derivative")
    sub.add_argument("--n", type=int, required=True)
    sub.add_argument("--t-min", type=float, default=-8.0)
    sub.add_argument("--t-max", type=float, default=8.0)
    sub.add_argument("--points", type=int, default=161)
    _common_output_flags(sub)

    sub = subs.add_parser("interp", help="interpolate node values from CSV")
    sub.add_argument("--n", type=int, required=True)
    sub.add_argument("--values", required=True,
                     help="CSV of raw node values, one row per node")
    sub.add_argument("--t-min", type=float, default=None)
    sub.add_argument("--t-max", type=float, default=None)
    sub.add_argument("--points", type=int, default=201)
    _common_output_flags(sub)

    sub = subs.add_parser("mz-ratio", help="continuous/discrete norm ratio sweep")
    sub.add_argument("--p", type=float, required=True)
    sub.add_argument("--q", type=float, default=2.0)
    sub.add_argument("--d", type=int, default=1)
    sub.add_argument("--trials", type=int, default=4)
    sub.add_argument("--seed", type=int, default=0)
    _experiment_flags(sub)

    sub = subs.add_parser("growth", help="norm growth of the basis functions "
                                         "plus the discrete witness")
    sub.add_argument("--p", type=float, required=True)
    _experiment_flags(sub)

    sub = subs.add_parser("counterexample", help="divergence witness growth")
    sub.add_argument("--p", type=float, required=True)
    sub.add_argument("--alpha", type=float, required=True)
    _experiment_flags(sub)

    sub = subs.add_parser("interp-convergence", help="interpolation error sweep")
    sub.add_argument("--p", type=float, default=2.0)
    sub.add_argument("--q", type=float, default=2.0)
    sub.add_argument("--d", type=int, default=1)
    sub.add_argument("--alpha", type=float, default=1.0)
    sub.add_argument("--profile", choices=("gaussian", "hermite", "kink"),
                     default="gaussian")
    _experiment_flags(sub)

    sub = subs.add_parser("expansion-convergence", help="partial-sum error sweep")
    sub.add_argument("--p", type=float, default=2.0)
    sub.add_argument("--q", type=float, default=2.0)
    sub.add_argument("--d", type=int, default=1)
    sub.add_argument("--profile", choices=("cauchy", "gaussian", "hermite"),
                     default="cauchy")
    _experiment_flags(sub)

    sub = subs.add_parser("kernel-bound", help="kernel scan values per order")
    sub.add_argument("--mode", choices=("continuous", "discrete", "diagonal"),
                     default="continuous")
    sub.add_argument("--m-list", type=_int_list,
                     default=[1, 2, 4, 8, 16, 32, 64, 128], metavar="M1,M2,...")
    sub.add_argument("--n", type=int, default=64,
                     help="rule degree for the discrete scan")
    sub.add_argument("--delta", type=float, default=0.9)
    _experiment_flags(sub)

    sub = subs.add_parser("hilbert", help="Hilbert-matrix section experiments")
    sub.add_argument("--mode", choices=("deviation", "norm"), default="deviation")
    sub.add_argument("--p", type=float, default=2.0)
    sub.add_argument("--sizes", type=_int_list,
                     default=[4, 8, 16, 32, 64, 128, 256, 512], metavar="S1,S2,...")
    _experiment_flags(sub)

    return parser


def _profile_handle(name: str, d: int) -> FunctionHandle:
    unit = np.ones(d) / math.sqrt(d)
    if name == "gaussian":
        return FunctionHandle(fn=lambda ts: np.exp(-ts * ts)[:, None] * unit, d=d)
    if name == "hermite":
        return FunctionHandle(fn=lambda ts: hermite_sequence(5, ts)[5][:, None] * unit, d=d)
    if name == "kink":
        return FunctionHandle(fn=lambda ts: (np.abs(ts) * np.exp(-ts * ts))[:, None] * unit, d=d)
    if name == "cauchy":
        return FunctionHandle(fn=lambda ts: (1.0 / (1.0 + ts * ts))[:, None] * unit,
                              d=d, envelope="bounded")
    raise UsageError(f"unknown profile {name!r}")


def _emit_text(text: str, out: str | None, default_name: str) -> None:
    path = resolve_out_path(out, default_name)
    if path is None:
        print(text, end="")
        return
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)


def _emit_report(report, args) -> None:
    path = resolve_out_path(args.out, f"{report.id}.{args.format}")
    write_report(report, path, args.format, plot=not args.no_plot)


def _run_nodes(args) -> None:
    rule = build_rule(args.n)
    if args.format == "csv":
        text = rule_to_csv(rule)
    else:
        import json
        text = json.dumps({"n": rule.n, "rows": [
            {"j": j + 1, "t": rule.nodes[j], "lambda": rule.lam[j], "mu": rule.mu[j]}
            for j in range(rule.size)]}, indent=2) + "\n"
    _emit_text(text, args.out, f"nodes_{args.n}.{args.format}")


def _run_eval(args) -> None:
    if args.points < 2 or not args.t_min < args.t_max:
        raise UsageError("need points >= 2 and t-min < t-max")
    ts = np.linspace(args.t_min, args.t_max, args.points)
    value, deriv = hermite_pair(args.n, ts)
    if args.format == "csv":
        text = table_to_csv(["t", "value", "derivative"],
                            [ts.tolist(), value.tolist(), deriv.tolist()])
    else:
        import json
        text = json.dumps({"n": args.n, "rows": [
            {"t": t, "value": v, "derivative": dv}
            for t, v, dv in zip(ts, value, deriv)]}, indent=2) + "\n"
    _emit_text(text, args.out, f"eval_{args.n}.{args.format}")


def _run_interp(args) -> None:
    rule = build_rule(args.n)
    raw = np.loadtxt(args.values, delimiter=",", ndmin=2)
    nv = NodeValues.from_samples(rule, raw)
    poly = interpolate(rule, nv)
    span = math.sqrt(rule.cap)
    t_min = -span if args.t_min is None else args.t_min
    t_max = span if args.t_max is None else args.t_max
    if args.points < 2 or not t_min < t_max:
        raise UsageError("need points >= 2 and t-min < t-max")
    ts = np.linspace(t_min, t_max, args.points)
    values = poly(ts)
    header = ["t"] + [f"g{k}" for k in range(values.shape[1])]
    columns = [ts.tolist()] + [values[:, k].tolist() for k in range(values.shape[1])]
    _emit_text(table_to_csv(header, columns), args.out, f"interp_{args.n}.csv")


def _merge_reports(merged_id: str, first, second, join_key: str):
    """Join two reports' rows on a shared key; fits and verdicts concatenate."""
    from .experiments import ExperimentReport

    by_key = {row[join_key]: dict(row) for row in first.rows}
    for row in second.rows:
        by_key.setdefault(row[join_key], {join_key: row[join_key]}).update(row)
    merged = ExperimentReport(id=merged_id,
                              params={**first.params, **second.params})
    merged.rows = [by_key[k] for k in sorted(by_key)]
    merged.fits = first.fits + second.fits
    merged.verdicts = first.verdicts + second.verdicts
    return merged


def _run_experiment(args) -> None:
    cmd = args.command
    if cmd == "mz-ratio":
        spec = NormSpec(d=args.d, q=args.q, p=args.p)
        report = mz_ratio_sweep(spec, args.n_list, trials=args.trials,
                                seed=args.seed, threads=args.threads)
    elif cmd == "growth":
        growth = hermite_norm_growth(args.p, args.n_list, threads=args.threads)
        witness = mz_witness_hn(args.p, args.n_list, threads=args.threads)
        report = _merge_reports("growth", growth, witness, "n")
    elif cmd == "counterexample":
        report = counterexample_growth(args.p, args.alpha, args.n_list,
                                       threads=args.threads)
    elif cmd == "interp-convergence":
        spec = NormSpec(d=args.d, q=args.q, p=args.p)
        handle = _profile_handle(args.profile, args.d)
        report = interpolation_convergence(handle, spec, args.alpha, args.n_list,
                                           threads=args.threads)
    elif cmd == "expansion-convergence":
        spec = NormSpec(d=args.d, q=args.q, p=args.p)
        handle = _profile_handle(args.profile, args.d)
        report = expansion_convergence(handle, spec, args.n_list,
                                       threads=args.threads)
    elif cmd == "kernel-bound":
        if args.mode == "continuous":
            report = kernel_bound_scan(args.m_list, threads=args.threads)
        elif args.mode == "discrete":
            report = kernel_bound_scan_discrete(args.n, args.delta, args.m_list,
                                                threads=args.threads)
        else:
            report = kernel_diagonal_growth(args.n_list, threads=args.threads)
    elif cmd == "hilbert":
        if args.mode == "deviation":
            report = hilbert_section_deviation(args.n_list, threads=args.threads)
        else:
            report = hilbert_matrix_norms(args.p, args.sizes, threads=args.threads)
    else:  # pragma: no cover - parser restricts commands
        raise UsageError(f"unknown command {cmd!r}")
    _emit_report(report, args)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "nodes":
            _run_nodes(args)
        elif args.command == "eval":
            _run_eval(args)
        elif args.command == "interp":
            _run_interp(args)
        else:
            _run_experiment(args)
    except _USAGE_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
