"""Command-line front end: generate, solve, evaluate, check, bench, gantt.

Results go to stdout as JSON (CSV for bench, SVG for gantt); diagnostics go
to stderr. Exit codes: 0 success, 1 infeasible instance or failed check,
2 invalid input, 3 search stopped by a limit without an optimality proof.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from pathlib import Path
from typing import Sequence

from .exact import (
    AllInfeasibleError,
    CapExceededError,
    SearchOptions,
    brute_force_general,
    brute_force_permutation,
    solve_bnb,
)
from .gantt import render_gantt
from .generate import GeneratorParams, generate_instance
from .heuristics import neh_insertion
from .io import parse_instance, parse_schedule, serialize_instance, serialize_schedule
from .model import (
    Criterion,
    Instance,
    MachineOrders,
    Schedule,
    SchedulingError,
    evaluate_criterion,
    orders_from_schedule,
    validate_schedule,
)
from .timing import InfeasibleError, least_schedule
from .twomachine import f2_minlag_given_m1


def _read(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def _emit(text: str, output: str | None) -> None:
    if output is None:
        sys.stdout.write(text)
    else:
        Path(output).write_text(text, encoding="utf-8")


def _parse_perm(text: str, n: int) -> tuple[int, ...]:
    try:
        perm = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise ValueError(f"not a comma-separated job list: {text!r}") from None
    if sorted(perm) != list(range(n)):
        raise ValueError(f"{perm} is not a permutation of jobs 0..{n - 1}")
    return perm


def _solve_one(
    inst: Instance, method: str, crit: Criterion, args
) -> tuple[dict, Schedule, bool]:
    """Run one solve method; returns (result members, schedule, proved optimal)."""
    doc: dict = {}
    if method == "bnb":
        opts = SearchOptions(
            criterion=crit,
            node_limit=args.node_limit,
            time_limit=args.time_limit,
            worker_count=args.workers,
            deterministic=args.workers == 1,
        )
        result = solve_bnb(inst, opts)
        doc["permutation"] = list(result.best_perm)
        doc["value"] = result.value
        doc["optimal"] = result.optimal
        doc["nodes"] = result.nodes_explored
        doc["root_lower_bound"] = result.root_lower_bound
        orders = MachineOrders.permutation(result.best_perm, inst.m)
        return doc, least_schedule(inst, orders), result.optimal
    if method == "neh":
        perm, value = neh_insertion(inst, crit)
        doc["permutation"] = list(perm)
        doc["value"] = value
        doc["optimal"] = False
        return doc, least_schedule(inst, MachineOrders.permutation(perm, inst.m)), True
    if method == "brute-perm":
        perm, value = brute_force_permutation(inst, crit)
        doc["permutation"] = list(perm)
        doc["value"] = value
        doc["optimal"] = True
        return doc, least_schedule(inst, MachineOrders.permutation(perm, inst.m)), True
    if method == "brute-general":
        orders, value = brute_force_general(inst, crit)
        doc["orders"] = [list(seq) for seq in orders.orders]
        doc["value"] = value
        doc["optimal"] = True
        return doc, least_schedule(inst, orders), True
    if method == "f2-restricted":
        if crit is not Criterion.MAKESPAN:
            raise ValueError("f2-restricted optimizes the makespan criterion only")
        m1 = (
            _parse_perm(args.m1_order, inst.n)
            if args.m1_order is not None
            else tuple(range(inst.n))
        )
        orders, sched = f2_minlag_given_m1(inst, m1)
        doc["orders"] = [list(seq) for seq in orders.orders]
        doc["value"] = evaluate_criterion(inst, sched, Criterion.MAKESPAN)
        doc["optimal"] = True
        return doc, sched, True
    raise ValueError(f"unknown method: {method}")


def _cmd_generate(args) -> int:
    params = GeneratorParams(
        n=args.jobs,
        m=args.machines,
        p_range=tuple(args.p_range),
        lag_density=args.lag_density,
        min_lag_range=tuple(args.min_lag_range),
        max_lag_extra_range=tuple(args.max_lag_extra_range),
        pmax_unbounded=args.pmax_unbounded,
        release_range=tuple(args.release_range) if args.release_range else None,
        due_range=tuple(args.due_range) if args.due_range else None,
        arbitrary_lags=args.arbitrary_lags,
        seed=args.seed,
    )
    _emit(serialize_instance(generate_instance(params)), args.output)
    return 0


def _cmd_solve(args) -> int:
    inst = parse_instance(_read(args.instance))
    crit = Criterion(args.criterion)
    doc = {"method": args.method, "criterion": args.criterion}
    members, sched, proved = _solve_one(inst, args.method, crit, args)
    doc.update(members)
    print(json.dumps(doc, indent=2))
    if args.schedule_out is not None:
        _emit(serialize_schedule(sched), args.schedule_out)
    return 0 if proved else 3


def _cmd_evaluate(args) -> int:
    inst = parse_instance(_read(args.instance))
    crit = Criterion(args.criterion)
    perm = _parse_perm(args.perm, inst.n)
    sched = least_schedule(inst, MachineOrders.permutation(perm, inst.m))
    doc = {
        "criterion": args.criterion,
        "permutation": list(perm),
        "value": evaluate_criterion(inst, sched, crit),
    }
    print(json.dumps(doc, indent=2))
    return 0


def _cmd_check(args) -> int:
    inst = parse_instance(_read(args.instance))
    sched = parse_schedule(_read(args.schedule), inst)
    violations = validate_schedule(inst, orders_from_schedule(inst, sched), sched)
    print(json.dumps({"violations": violations}, indent=2))
    return 1 if violations else 0


def _cmd_bench(args) -> int:
    paths = sorted(Path(args.directory).glob("*.json"))
    if not paths:
        raise ValueError(f"no *.json instances under {args.directory}")
    methods = args.methods.split(",")
    for method in methods:
        if method not in _METHODS:
            raise ValueError(f"unknown method: {method}")
    crit = Criterion(args.criterion)
    rows = [["instance", "method", "value", "optimal", "nodes", "millis"]]
    for path in paths:
        inst = parse_instance(path.read_text(encoding="utf-8"))
        for method in methods:
            t0 = time.perf_counter()
            try:
                members, _, _ = _solve_one(inst, method, crit, args)
            except (InfeasibleError, AllInfeasibleError, CapExceededError) as exc:
                print(f"{path.name} [{method}]: {exc}", file=sys.stderr)
                members = {"value": "", "optimal": False, "nodes": 0}
            millis = round((time.perf_counter() - t0) * 1000)
            rows.append(
                [
                    path.name,
                    method,
                    members["value"],
                    "true" if members["optimal"] else "false",
                    members.get("nodes", 0),
                    millis,
                ]
            )
    if args.output is None:
        csv.writer(sys.stdout).writerows(rows)
    else:
        with open(args.output, "w", encoding="utf-8", newline="") as f:
            csv.writer(f).writerows(rows)
    return 0


def _cmd_gantt(args) -> int:
    inst = parse_instance(_read(args.instance))
    sched = parse_schedule(_read(args.schedule), inst)
    _emit(render_gantt(inst, sched), args.output)
    return 0


def _add_range(parser, flag, default, help_text):
    parser.add_argument(
        flag, type=int, nargs=2, metavar=("LO", "HI"), default=default, help=help_text
    )


_METHODS = ["bnb", "neh", "brute-perm", "brute-general", "f2-restricted"]


def _add_solve_options(parser) -> None:
    parser.add_argument("--criterion", choices=["cmax", "lmax"], default="cmax")
    parser.add_argument("--time-limit", type=float, help="seconds before giving up")
    parser.add_argument("--node-limit", type=int, help="search nodes before giving up")
    parser.add_argument("--workers", type=int, default=1)
    parser.add_argument(
        "--seed",
        type=int,
        default=0,
        help="accepted for interface stability; all methods are deterministic",
    )
    parser.add_argument(
        "--m1-order",
        help="f2-restricted: comma-separated machine-1 sequence (default 0,1,...)",
    )


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="flowlag",
        description="Flowshop scheduling with minimal and maximal time lags.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="write a random instance as JSON")
    g.add_argument("-n", "--jobs", type=int, required=True)
    g.add_argument("-m", "--machines", type=int, required=True)
    _add_range(g, "--p-range", (1, 100), "processing time range")
    g.add_argument("--lag-density", type=float, default=0.5)
    _add_range(g, "--min-lag-range", (0, 50), "minimal lag range")
    _add_range(g, "--max-lag-extra-range", (0, 50), "maximal lag slack over minimal")
    g.add_argument(
        "--pmax-unbounded",
        type=float,
        default=0.0,
        help="probability a lag has no upper bound",
    )
    _add_range(g, "--release-range", None, "release date range (omit for none)")
    _add_range(g, "--due-range", None, "due date range (omit for none)")
    g.add_argument(
        "--arbitrary-lags",
        action="store_true",
        help="draw lags over arbitrary operation pairs, not just successive ones",
    )
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("-o", "--output", help="file to write (default stdout)")
    g.set_defaults(func=_cmd_generate)

    s = sub.add_parser("solve", help="solve an instance, result JSON on stdout")
    s.add_argument("instance")
    s.add_argument("--method", choices=_METHODS, default="bnb")
    _add_solve_options(s)
    s.add_argument("--schedule-out", help="also write the timed schedule to this file")
    s.set_defaults(func=_cmd_solve)

    e = sub.add_parser("evaluate", help="time a given permutation")
    e.add_argument("instance")
    e.add_argument("--perm", required=True, help="comma-separated job sequence")
    e.add_argument("--criterion", choices=["cmax", "lmax", "sumc"], default="cmax")
    e.set_defaults(func=_cmd_evaluate)

    c = sub.add_parser("check", help="validate a schedule file against an instance")
    c.add_argument("instance")
    c.add_argument("schedule")
    c.set_defaults(func=_cmd_check)

    b = sub.add_parser("bench", help="solve every instance in a directory, CSV out")
    b.add_argument("directory")
    b.add_argument(
        "--methods", default="bnb", help="comma-separated subset of the solve methods"
    )
    _add_solve_options(b)
    b.add_argument("-o", "--output", help="CSV file to write (default stdout)")
    b.set_defaults(func=_cmd_bench)

    v = sub.add_parser("gantt", help="render a schedule as SVG")
    v.add_argument("instance")
    v.add_argument("schedule")
    v.add_argument("-o", "--output", help="SVG file to write (default stdout)")
    v.set_defaults(func=_cmd_gantt)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    """Entry point; returns the process exit code instead of raising."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.func(args)
    except InfeasibleError as exc:
        # the message already cites the job and the positive cycle
        print(f"infeasible: {exc}", file=sys.stderr)
        return 1
    except AllInfeasibleError as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return 1
    except (SchedulingError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
