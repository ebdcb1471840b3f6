"""Command-line front end: generate graphs, analyze instances, run sweeps.

Exit codes: 0 success, 2 parameter error, 3 connectivity error,
4 capacity error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import bounds, exact, simulate
from .errors import CapacityError, ConnectivityError, ParameterError, PropTimeError
from .graph import (
    FamilySpec,
    diameter,
    eccentricity,
    generate,
    generate_geometric,
    giant_component,
    is_connected,
    write_edge_list,
    write_layout,
)
from .rng import derive_seed

ANALYZE_COLUMNS = [
    "family", "n", "p", "seed", "exact", "mc_mean", "mc_stderr", "lower",
    "d", "b", "tau", "upper", "diameter", "eccentricity", "runtime_ms",
]

SWEEP_AXES = ("n", "p", "r", "lambda", "shortcuts")


def _add_family_flags(sub):
    sub.add_argument("--family", required=True)
    sub.add_argument("--n", type=int)
    sub.add_argument("--b", type=int)
    sub.add_argument("--d", type=int)
    sub.add_argument("--side", type=int)
    sub.add_argument("--parts", type=str,
                     help="comma-separated part sizes for complete_multipartite")
    sub.add_argument("--edge-prob", type=float)
    sub.add_argument("--lambda", dest="exponent", type=float,
                     help="power-law degree exponent (> 2)")
    sub.add_argument("--kmin", type=int, default=1)
    sub.add_argument("--r", type=float)
    sub.add_argument("--shortcuts", type=int)
    sub.add_argument("--seed", type=int, default=0)


def _spec_from_args(args, seed: int) -> FamilySpec:
    parts = None
    if args.parts is not None:
        parts = tuple(int(s) for s in args.parts.split(",") if s)
    return FamilySpec(
        family=args.family, n=args.n, b=args.b, d=args.d, side=args.side,
        parts=parts, edge_prob=args.edge_prob, exponent=args.exponent,
        k_min=args.kmin, r=args.r, shortcuts=args.shortcuts, seed=seed,
    )


def _cmd_generate(args) -> int:
    spec = _spec_from_args(args, args.seed)
    if spec.family == "geometric":
        g, layout = generate_geometric(spec)
        write_layout(layout, args.out + ".layout")
    else:
        g = generate(spec)
    write_edge_list(g, args.out)
    return 0


def _apply_sweep_value(args, axis: str, raw: str):
    if axis == "n":
        value = int(raw)
        family = args.family
        if family in ("lattice2d", "lattice2d_shortcuts"):
            args.side = value
        elif family == "binary_tree":
            args.d = value
        elif family == "star":
            raise ParameterError("star has no single size; sweep b or d instead")
        else:
            args.n = value
    elif axis == "p":
        args.p = float(raw)
    elif axis == "r":
        args.r = float(raw)
    elif axis == "lambda":
        args.exponent = float(raw)
    elif axis == "shortcuts":
        args.shortcuts = int(raw)
    return args


def _analyze_record(args, seed: int) -> dict:
    t0 = time.perf_counter()
    spec = _spec_from_args(args, seed)
    g = generate(spec)
    if not is_connected(g):
        if not args.giant:
            raise ConnectivityError(
                f"{spec.label()} is disconnected; pass --giant to analyze "
                "its largest component")
        g, _ = giant_component(g)
    src = args.src
    params = simulate.SimParams(p=args.p, master_seed=seed)
    est = simulate.monte_carlo(g, src, params, args.reps)
    exact_value = None
    if g.node_count <= exact.SUBSET_NODE_CAP:
        exact_value = exact.subset_hitting_time(g, src, args.p)
    report = bounds.network_upper_bound(g, src, args.p)
    record = {
        "family": spec.family,
        "n": g.node_count,
        "p": args.p,
        "seed": seed,
        "exact": exact_value,
        "mc_mean": est.mean,
        "mc_stderr": est.std_error,
        "lower": report.lower,
        "d": report.reduction.d,
        "b": report.reduction.b,
        "tau": report.tau,
        "upper": report.upper,
        "diameter": diameter(g),
        "eccentricity": eccentricity(g, src),
        "runtime_ms": (time.perf_counter() - t0) * 1000.0,
    }
    return record


def _format_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _emit(records: list[dict], fmt: str, out, single: bool) -> None:
    close = False
    if isinstance(out, str):
        out, close = open(out, "w"), True
    try:
        if fmt == "json":
            payload = records[0] if single else records
            out.write(json.dumps(payload, indent=2))
            out.write("\n")
        else:
            out.write(",".join(ANALYZE_COLUMNS) + "\n")
            for rec in records:
                out.write(",".join(_format_cell(rec[c]) for c in ANALYZE_COLUMNS))
                out.write("\n")
    finally:
        if close:
            out.close()


def _cmd_analyze(args) -> int:
    record = _analyze_record(args, args.seed)
    _emit([record], args.format, args.out or sys.stdout, single=True)
    return 0


def _cmd_sweep(args) -> int:
    values = [v for v in args.values.split(",") if v]
    if not values:
        raise ParameterError("--values must list at least one value")
    records = []
    for i, raw in enumerate(values):
        _apply_sweep_value(args, args.sweep, raw)
        records.append(_analyze_record(args, derive_seed(args.seed, i)))
    _emit(records, args.format, args.out or sys.stdout, single=False)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="proptime",
        description="Propagation time of stochastic spreading on networks: "
                    "generators, Monte Carlo, exact solvers, bounds.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    gen = subs.add_parser("generate", help="write an edge-list file "
                          "(plus .layout for geometric)")
    _add_family_flags(gen)
    gen.add_argument("--out", required=True)
    gen.set_defaults(func=_cmd_generate)

    def add_analysis_flags(sub):
        _add_family_flags(sub)
        sub.add_argument("--p", type=float, required=True,
                         help="per-edge transmission probability")
        sub.add_argument("--reps", type=int, default=1000)
        sub.add_argument("--src", type=int, default=0)
        sub.add_argument("--giant", action="store_true",
                         help="analyze the largest component if disconnected")
        sub.add_argument("--format", choices=("csv", "json"), default="csv")
        sub.add_argument("--out")

    ana = subs.add_parser("analyze", help="one record: exact (n <= 20), "
                          "Monte Carlo, and bound report")
    add_analysis_flags(ana)
    ana.set_defaults(func=_cmd_analyze)

    swp = subs.add_parser("sweep", help="analyze once per swept value")
    add_analysis_flags(swp)
    swp.add_argument("--sweep", choices=SWEEP_AXES, required=True)
    swp.add_argument("--values", required=True,
                     help="comma-separated values for the swept axis")
    swp.set_defaults(func=_cmd_sweep)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParameterError as err:
        print(f"parameter error: {err}", file=sys.stderr)
        return 2
    except ConnectivityError as err:
        print(f"connectivity error: {err}", file=sys.stderr)
        return 3
    except CapacityError as err:
        print(f"capacity error: {err}", file=sys.stderr)
        return 4
    except PropTimeError as err:
        print(f"error: {err}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
