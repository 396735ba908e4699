"""Command-line front end: solve, check, gen, and bench subcommands.

All outputs are JSON documents or JSON-lines reports.  Exit codes: 0 on
success, 1 for user/input errors, 2 for internal invariant violations.
The environment variable DYNSINK_TOLERANCE overrides the relative tolerance
used for result certification.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
import time

from . import oracle as orc
from .minimax import MinimaxSolver, evaluate_minimax
from .minisum import MongeWeightOracle, evaluate_minisum, minisum_k_sink
from .model import DEFAULT_REL_TOL, DynamicPathNetwork, InvalidInstanceError, validate_network


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage errors are exit code 1, not argparse's 2
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _tolerance(override: float | None) -> float:
    if override is not None:
        return override
    env = os.environ.get("DYNSINK_TOLERANCE")
    if env:
        return float(env)
    return DEFAULT_REL_TOL


def _load_instance(path: str) -> DynamicPathNetwork:
    with open(path) as fh:
        raw = json.load(fh)
    return validate_network(raw)


def _placement_doc(net, placement, counters: dict, wall_time: float) -> dict:
    return {
        "instance_digest": orc.instance_digest(net),
        "objective": placement.objective,
        "k": placement.k,
        "cost": placement.cost,
        "sinks": list(placement.sinks),
        "dividers": list(placement.dividers),
        "groups": [
            {"from": g.first, "to": g.last, "sink": g.sink, "group_cost": g.cost}
            for g in placement.groups
        ],
        "counters": counters,
        "wall_time": wall_time,
    }


def _emit(doc, output: str | None) -> None:
    text = json.dumps(doc, indent=2, sort_keys=True)
    if output:
        with open(output, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _solve_instance(net, objective: str, k: int):
    """Returns (placement, counters dict)."""
    if objective == "minimax":
        solver = MinimaxSolver(net, k)
        placement = solver.solve()
        counters = solver.counters.as_dict()
    else:
        weight_oracle = MongeWeightOracle(net)
        placement = minisum_k_sink(net, k, weight_oracle)
        counters = {"weight_queries": weight_oracle.query_counter}
    return placement, counters


def cmd_solve(args) -> int:
    if args.k < 1:
        print("error: k must be >= 1", file=sys.stderr)
        return 1
    tol = _tolerance(args.tolerance)
    try:
        net = _load_instance(args.input)
    except (OSError, json.JSONDecodeError, InvalidInstanceError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    start = time.perf_counter()
    placement, counters = _solve_instance(net, args.objective, args.k)
    wall = time.perf_counter() - start
    evaluator = evaluate_minimax if args.objective == "minimax" else evaluate_minisum
    recomputed = evaluator(net, placement)
    if abs(recomputed - placement.cost) > tol * max(1.0, abs(placement.cost)):
        print(
            f"internal error: certification failed ({recomputed} vs {placement.cost})",
            file=sys.stderr,
        )
        return 2
    doc = _placement_doc(net, placement, counters if args.emit_counters else {}, wall)
    _emit(doc, args.output)
    return 0


def _random_instance(rng: random.Random, max_n: int) -> DynamicPathNetwork:
    n = rng.randint(1, max_n)
    positions = [0.0]
    for _ in range(n - 1):
        positions.append(positions[-1] + rng.uniform(0.5, 10.0))
    weights = [rng.uniform(0.5, 10.0) for _ in range(n)]
    return validate_network(
        {
            "positions": positions,
            "weights": weights,
            "capacity": rng.uniform(0.5, 4.0),
            "tau": rng.uniform(0.5, 4.0),
        }
    )


def cmd_check(args) -> int:
    rng = random.Random(args.seed)
    tol = _tolerance(args.tolerance)
    report_fh = open(args.report, "w") if args.report else sys.stdout
    failures = 0
    budget_skips = 0
    try:
        for trial in range(args.trials):
            net = _random_instance(rng, args.max_n)
            k = rng.randint(1, args.max_k)
            reports = []
            try:
                mm_opt = orc.oracle_minimax_k(net, k)
                ms_opt = orc.oracle_minisum_k(net, k)
            except orc.BudgetExceededError as exc:
                budget_skips += 1
                print(f"trial {trial}: budget exceeded: {exc}", file=sys.stderr)
                continue
            mm_placement, _ = _solve_instance(net, "minimax", k)
            ms_placement, _ = _solve_instance(net, "minisum", k)
            inject = 1e-3 if args.inject_error else 0.0
            reports.append(
                orc.make_report(
                    net, f"minimax_k_sink(k={k})",
                    mm_placement.cost + inject, mm_opt.cost, tol, args.seed,
                )
            )
            reports.append(
                orc.make_report(
                    net, f"minisum_k_sink(k={k})",
                    ms_placement.cost + inject, ms_opt.cost, tol, args.seed,
                )
            )
            reports.append(
                orc.make_report(
                    net, "evaluate_minimax",
                    evaluate_minimax(net, mm_placement), mm_placement.cost, tol, args.seed,
                )
            )
            reports.append(
                orc.make_report(
                    net, "evaluate_minisum",
                    evaluate_minisum(net, ms_placement), ms_placement.cost, tol, args.seed,
                )
            )
            if net.n <= 12:
                violations = orc.check_monge(net)
                reports.append(
                    orc.make_report(
                        net, "check_monge", float(len(violations)), 0.0, tol, args.seed
                    )
                )
            for report in reports:
                if not report.passed:
                    failures += 1
                print(report.to_json(), file=report_fh)
    finally:
        if args.report:
            report_fh.close()
    summary = (
        f"check: {args.trials} trials, {failures} failures, {budget_skips} budget skips"
    )
    print(summary, file=sys.stderr)
    return 1 if failures else 0


def cmd_gen(args) -> int:
    if args.n < 1:
        print("error: n must be >= 1", file=sys.stderr)
        return 1
    rng = random.Random(args.seed)
    positions = [0.0]
    for _ in range(args.n - 1):
        positions.append(positions[-1] + rng.uniform(*args.len_range))
    instance = {
        "positions": positions,
        "weights": [rng.uniform(*args.weight_range) for _ in range(args.n)],
        "capacity": rng.uniform(*args.cap_range),
        "tau": rng.uniform(*args.tau_range),
    }
    validate_network(instance)
    _emit(instance, args.output)
    return 0


def cmd_bench(args) -> int:
    rng = random.Random(args.seed)
    rows = []
    for n in args.sizes:
        net = _random_instance_sized(rng, n)
        for k in args.k:
            start = time.perf_counter()
            placement, counters = _solve_instance(net, args.objective, k)
            wall = time.perf_counter() - start
            total = sum(v for v in counters.values() if isinstance(v, int))
            rows.append(
                {
                    "n": n,
                    "k": k,
                    "objective": args.objective,
                    "cost": placement.cost,
                    "wall_time": wall,
                    "counters": counters,
                    "counter_total": total,
                    "counter_per_n": total / n,
                }
            )
    _emit(rows, args.output)
    return 0


def _random_instance_sized(rng: random.Random, n: int) -> DynamicPathNetwork:
    positions = [0.0]
    for _ in range(n - 1):
        positions.append(positions[-1] + rng.uniform(0.5, 10.0))
    weights = [rng.uniform(0.5, 10.0) for _ in range(n)]
    return validate_network(
        {
            "positions": positions,
            "weights": weights,
            "capacity": rng.uniform(0.5, 4.0),
            "tau": rng.uniform(0.5, 4.0),
        }
    )


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="dynsink", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve one instance")
    p.add_argument("--objective", choices=["minimax", "minisum"], required=True)
    p.add_argument("-k", type=int, required=True)
    p.add_argument("--input", required=True)
    p.add_argument("--output", "-o", default=None)
    p.add_argument("--tolerance", type=float, default=None)
    p.add_argument("--emit-counters", action="store_true")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("check", help="randomized solver-vs-oracle fuzzing")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--max-n", type=int, default=10)
    p.add_argument("--max-k", type=int, default=4)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tolerance", type=float, default=None)
    p.add_argument("--report", default=None, help="OracleReport JSON-lines path")
    p.add_argument("--inject-error", action="store_true", help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("gen", help="generate a random instance")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--len-range", type=float, nargs=2, default=(0.5, 10.0))
    p.add_argument("--weight-range", type=float, nargs=2, default=(0.5, 10.0))
    p.add_argument("--cap-range", type=float, nargs=2, default=(0.5, 4.0))
    p.add_argument("--tau-range", type=float, nargs=2, default=(0.5, 4.0))
    p.add_argument("--output", "-o", default=None)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("bench", help="operation-counter benchmarks")
    p.add_argument("--sizes", type=int, nargs="+", required=True)
    p.add_argument("--k", type=int, nargs="+", required=True)
    p.add_argument("--objective", choices=["minimax", "minisum"], default="minimax")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output", "-o", default=None)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (InvalidInstanceError, OSError, json.JSONDecodeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except AssertionError as exc:
        print(f"internal invariant violation: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
