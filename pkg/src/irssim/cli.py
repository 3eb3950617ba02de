"""Command-line surface.

    sim sweep    --config FILE [--grid N | --random COUNT --seed S] --out DIR
    sim compare  --conv FILE --irs FILE [--grid N] --out DIR
    sim optimize --config FILE --target P --var {power|elements}
                 [--bracket LO HI] [--tol T] --out DIR

Exit codes: 0 success, 2 config error, 3 bracket/infeasible, 4 I/O error.
SIM_THREADS caps worker parallelism (0 or unset = auto); SIM_BACKEND picks
the numba or numpy kernel path.
"""

from __future__ import annotations

import argparse
import os
import sys

from .config import load_config
from .errors import (BracketError, Infeasible, InvalidConfig,
                     MismatchedScenarios, ParseError, SimError,
                     UnknownKey, UnsupportedCarrier)
from .model import validate
from .optimize import min_elements_for_edge_target, min_power_for_edge_target
from .report import emit_map_csv, emit_summary, write_manifest
from .sweep import DEFAULT_GRID, compare_modes, drop_for_scenario, sweep

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_SEARCH = 3
EXIT_IO = 4

DEFAULT_POWER_BRACKET = (0.5, 6.0)
DEFAULT_ELEMENTS_MAX = 1024
DEFAULT_POWER_TOL_W = 1e-4


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sim", description="two-tier micro-cell association simulator")
    sub = parser.add_subparsers(dest="command", required=True)

    p_sweep = sub.add_parser("sweep", help="association map for one scenario")
    p_sweep.add_argument("--config", required=True)
    drop = p_sweep.add_mutually_exclusive_group()
    drop.add_argument("--grid", type=int, help=f"points per axis (default {DEFAULT_GRID})")
    drop.add_argument("--random", type=int, metavar="COUNT")
    p_sweep.add_argument("--seed", type=int, default=0, help="random-drop seed")
    p_sweep.add_argument("--out", required=True)

    p_cmp = sub.add_parser("compare", help="conventional vs IRS-assisted maps")
    p_cmp.add_argument("--conv", required=True)
    p_cmp.add_argument("--irs", required=True)
    p_cmp.add_argument("--grid", type=int)
    p_cmp.add_argument("--out", required=True)

    p_opt = sub.add_parser("optimize", help="minimal resource for an edge target")
    p_opt.add_argument("--config", required=True)
    p_opt.add_argument("--target", type=float, required=True)
    p_opt.add_argument("--var", choices=("power", "elements"), required=True)
    p_opt.add_argument("--bracket", type=float, nargs=2, metavar=("LO", "HI"))
    p_opt.add_argument("--tol", type=float, default=DEFAULT_POWER_TOL_W)
    p_opt.add_argument("--out", required=True)
    return parser


def _drop_args(args) -> dict:
    if getattr(args, "random", None) is not None:
        return {"random_count": args.random, "seed": args.seed}
    return {"grid": args.grid if getattr(args, "grid", None) is not None
            else DEFAULT_GRID}


def _run_sweep(args) -> int:
    scenario = validate(load_config(args.config))
    drop = drop_for_scenario(scenario, **_drop_args(args))
    amap = sweep(scenario, drop)
    os.makedirs(args.out, exist_ok=True)
    emit_map_csv(amap, os.path.join(args.out, "map.csv"))
    emit_summary(os.path.join(args.out, "summary.txt"), [scenario], maps=[amap])
    write_manifest("sweep", [args.config], drop.__dict__, args.out,
                   ["map.csv", "summary.txt"])
    s = amap.stats
    print(f"sweep ok: {len(amap.assoc_prob)} users, max {s.max:.4f} "
          f"min {s.min:.4f} edge_min {s.edge_min:.4f} -> {args.out}")
    return EXIT_OK


def _run_compare(args) -> int:
    conv = validate(load_config(args.conv))
    irs = validate(load_config(args.irs))
    drop = drop_for_scenario(conv, grid=args.grid if args.grid else DEFAULT_GRID)
    result = compare_modes(conv, irs, drop)
    os.makedirs(args.out, exist_ok=True)
    emit_map_csv(result.conv, os.path.join(args.out, "conv.csv"))
    emit_map_csv(result.irs, os.path.join(args.out, "irs.csv"))
    emit_summary(os.path.join(args.out, "summary.txt"), [conv, irs],
                 comparison=result)
    write_manifest("compare", [args.conv, args.irs], drop.__dict__, args.out,
                   ["conv.csv", "irs.csv", "summary.txt"])
    print(f"compare ok: edge_min delta {result.edge_min_delta:+.4f} -> {args.out}")
    return EXIT_OK


def _run_optimize(args) -> int:
    scenario = validate(load_config(args.config))
    drop = drop_for_scenario(scenario, grid=DEFAULT_GRID)
    if args.var == "power":
        lo, hi = args.bracket if args.bracket else DEFAULT_POWER_BRACKET
        outcome = min_power_for_edge_target(scenario, drop, args.target,
                                            lo, hi, args.tol)
    else:
        n_max = int(args.bracket[1]) if args.bracket else DEFAULT_ELEMENTS_MAX
        outcome = min_elements_for_edge_target(scenario, drop, args.target, n_max)
    os.makedirs(args.out, exist_ok=True)
    emit_summary(os.path.join(args.out, "summary.txt"), [scenario],
                 outcome=outcome)
    write_manifest("optimize", [args.config], drop.__dict__, args.out,
                   ["summary.txt"])
    print(f"optimize ok: {outcome.variable} = {outcome.optimum} "
          f"(edge_min {outcome.achieved_edge_min:.4f}) -> {args.out}")
    return EXIT_OK


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    handlers = {"sweep": _run_sweep, "compare": _run_compare,
                "optimize": _run_optimize}
    try:
        return handlers[args.command](args)
    except (ParseError, UnknownKey, InvalidConfig, UnsupportedCarrier,
            MismatchedScenarios, ValueError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (BracketError, Infeasible) as exc:
        print(f"search failed: {exc}", file=sys.stderr)
        return EXIT_SEARCH
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
    except SimError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
