"""Exact search: branch-and-bound over permutations plus brute-force oracles.

The branch-and-bound explores permutation prefixes depth-first, pruning with
an admissible machine-load bound and starting from an NEH incumbent. Maximum
lateness is solved by reducing to makespan with a dummy final machine and
shifting the value back. Brute-force enumerators over permutations and over
arbitrary per-machine orders serve as ground truth and expose the gap that
makes permutation schedules non-dominant.
"""

from __future__ import annotations

import itertools
import math
import random
import threading
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from typing import Callable, Sequence

from .generate import GeneratorParams, generate_instance
from .heuristics import neh_insertion
from .model import (
    Criterion,
    Instance,
    InvalidInstanceError,
    MachineOrders,
    Schedule,
    SchedulingError,
    evaluate_criterion,
    validate_instance,
)
from .timing import (
    InfeasibleError,
    internal_arcs,
    internal_tail,
    job_cycle_witness,
    job_feasible,
    least_schedule,
    _floor_starts,
)
from .transforms import lmax_to_cmax


class CapExceededError(SchedulingError):
    """Requested enumeration is larger than the configured cap."""


class AllInfeasibleError(SchedulingError):
    """Every enumerated order tuple was infeasible."""


@dataclass(frozen=True)
class SearchOptions:
    """Knobs for solve_bnb; deterministic mode requires a single worker."""

    criterion: Criterion = Criterion.MAKESPAN
    node_limit: int | None = None
    time_limit: float | None = None
    worker_count: int = 1
    deterministic: bool = True

    def __post_init__(self):
        if self.worker_count < 1:
            raise ValueError("worker_count must be >= 1")
        if self.deterministic and self.worker_count != 1:
            raise ValueError("deterministic search requires worker_count = 1")


@dataclass(frozen=True)
class BnBResult:
    best_perm: tuple[int, ...]
    value: int
    optimal: bool
    nodes_explored: int
    root_lower_bound: int
    elapsed: float


@dataclass(frozen=True)
class GapResult:
    """A certified instance whose general optimum beats every permutation."""

    instance: Instance
    permutation_value: int
    general_value: int
    general_orders: MachineOrders


def lower_bound(
    inst: Instance,
    prefix: Sequence[int],
    prefix_sched: Schedule | None,
    remaining: Sequence[int],
    crit: Criterion = Criterion.MAKESPAN,
) -> int:
    """Admissible makespan bound for every permutation extending ``prefix``.

    Per machine k: the prefix's last completion on k, plus all remaining
    processing on k, plus the smallest remaining internal tail after k.
    Prefix start times survive any extension unchanged, every remaining job
    still occupies machine k for its full processing time, and the job that
    ends up last on k still needs its internal tail, so no extension can
    finish earlier. ``prefix_sched`` must be the prefix's least schedule with
    rows in prefix order (see timing.prefix_schedule); None for an empty
    prefix.
    """
    if crit is not Criterion.MAKESPAN:
        raise ValueError("the bound is defined for the makespan criterion")
    m = inst.m
    remaining = list(remaining)
    if prefix:
        assert prefix_sched is not None
        last = len(prefix) - 1
        ck = [
            int(prefix_sched.start[last, k] + inst.p[prefix[last], k])
            for k in range(m)
        ]
    else:
        ck = [0] * m
    if not remaining:
        return max(ck)
    best = 0
    for k in range(m):
        load = ck[k] + sum(int(inst.p[i, k]) for i in remaining)
        tail = min(internal_tail(inst, i, k) for i in remaining)
        best = max(best, load + tail)
    return best


class _SearchCore:
    """Shared state and the depth-first loop run by each worker."""

    def __init__(self, inst: Instance, opts: SearchOptions, incumbent, on_incumbent):
        self.n, self.m = inst.n, inst.m
        self.p = inst.p.tolist()
        self.release = inst.release.tolist() if inst.release is not None else [0] * inst.n
        self.job_arcs = [internal_arcs(inst, i) for i in range(inst.n)]
        self.tails = [
            [internal_tail(inst, i, k) for k in range(inst.m)] for i in range(inst.n)
        ]
        self.opts = opts
        self.lock = threading.Lock()
        self.best_perm, self.best_value = incumbent
        self.on_incumbent = on_incumbent
        self.nodes = 1  # the root
        self.limit_hit = False
        self.deadline = (
            time.perf_counter() + opts.time_limit if opts.time_limit is not None else None
        )

    def _child_starts(self, job: int, avail: tuple[int, ...]) -> list[int]:
        floor = list(avail)
        if self.release[job] > floor[0]:
            floor[0] = self.release[job]
        starts = _floor_starts(self.m, self.job_arcs[job], floor)
        if starts is None:  # pre-checked job feasibility makes this impossible
            raise InfeasibleError(f"job {job} has inconsistent lags")
        return starts

    def _count_node(self) -> bool:
        """Account for one explored node; False once a limit trips."""
        with self.lock:
            if self.limit_hit:
                return False
            self.nodes += 1
            if self.opts.node_limit is not None and self.nodes >= self.opts.node_limit:
                self.limit_hit = True
            if self.deadline is not None and time.perf_counter() > self.deadline:
                self.limit_hit = True
        return not self.limit_hit

    def _offer(self, perm: tuple[int, ...], value: int) -> None:
        with self.lock:
            if value < self.best_value or (
                value == self.best_value and perm < self.best_perm
            ):
                self.best_value = value
                self.best_perm = perm
                if self.on_incumbent is not None:
                    self.on_incumbent(value)

    def expand(self, prefix: tuple[int, ...], avail: tuple[int, ...], remaining, rem_load):
        """Children of a node in ascending job order, with their bounds."""
        children = []
        for b in remaining:
            if not self._count_node():
                return children
            starts = self._child_starts(b, avail)
            avail2 = tuple(starts[k] + self.p[b][k] for k in range(self.m))
            rem2 = tuple(i for i in remaining if i != b)
            load2 = tuple(rem_load[k] - self.p[b][k] for k in range(self.m))
            prefix2 = prefix + (b,)
            if not rem2:
                self._offer(prefix2, max(avail2))
                continue
            bound = max(
                avail2[k] + load2[k] + min(self.tails[i][k] for i in rem2)
                for k in range(self.m)
            )
            if bound < self.best_value:
                children.append((prefix2, avail2, rem2, load2))
        return children

    def dfs(self, root) -> None:
        stack = [root]
        while stack:
            if self.limit_hit:
                return
            prefix, avail, remaining, rem_load = stack.pop()
            # re-check: the incumbent may have improved since this node was pushed
            bound = max(
                avail[k] + rem_load[k] + min(self.tails[i][k] for i in remaining)
                for k in range(self.m)
            )
            if bound >= self.best_value:
                continue
            stack.extend(reversed(self.expand(prefix, avail, remaining, rem_load)))


def _solve_bnb_makespan(
    inst: Instance, opts: SearchOptions, on_incumbent
) -> tuple[tuple[int, ...], int, bool, int, int]:
    incumbent = neh_insertion(inst, Criterion.MAKESPAN)
    if on_incumbent is not None:
        on_incumbent(incumbent[1])
    root_lb = lower_bound(inst, (), None, range(inst.n))
    core = _SearchCore(inst, opts, incumbent, on_incumbent)

    root = (
        (),
        (0,) * inst.m,
        tuple(range(inst.n)),
        tuple(int(inst.p[:, k].sum()) for k in range(inst.m)),
    )
    if opts.worker_count == 1:
        core.dfs(root)
    else:
        subtrees = core.expand(*root)
        with ThreadPoolExecutor(max_workers=opts.worker_count) as pool:
            for f in [pool.submit(core.dfs, s) for s in subtrees]:
                f.result()
    return core.best_perm, core.best_value, not core.limit_hit, core.nodes, root_lb


def solve_bnb(
    inst: Instance,
    opts: SearchOptions | None = None,
    on_incumbent: Callable[[int], None] | None = None,
) -> BnBResult:
    """Branch-and-bound over permutations for makespan or maximum lateness.

    Children append unscheduled jobs in ascending index; nodes are pruned
    when the admissible bound reaches the incumbent, which starts from the
    NEH heuristic. With no limits the result is the exact permutation
    optimum (``optimal`` is True); hitting a node or time limit returns the
    best found so far. ``on_incumbent`` is called with each improving value.
    """
    opts = opts or SearchOptions()
    t0 = time.perf_counter()
    defects = validate_instance(inst)
    if defects:
        raise InvalidInstanceError(defects)
    for i in range(inst.n):
        if not job_feasible(inst, i):
            raise InfeasibleError(
                f"job {i} has inconsistent lags", job_cycle_witness(inst, i)
            )

    if opts.criterion is Criterion.MAKESPAN:
        solved, offset = inst, 0
    elif opts.criterion is Criterion.MAX_LATENESS:
        t = lmax_to_cmax(inst)
        solved, offset = t.inst, t.offset
    else:
        raise ValueError(f"solve_bnb supports C_max and L_max, not {opts.criterion}")

    perm, value, optimal, nodes, root_lb = _solve_bnb_makespan(solved, opts, on_incumbent)
    return BnBResult(
        best_perm=perm,
        value=value - offset,
        optimal=optimal,
        nodes_explored=nodes,
        root_lower_bound=root_lb - offset,
        elapsed=time.perf_counter() - t0,
    )


def brute_force_permutation(
    inst: Instance, crit: Criterion = Criterion.MAKESPAN, cap: int = 9
) -> tuple[tuple[int, ...], int]:
    """Ground-truth permutation optimum by full enumeration (n <= cap).

    Every permutation is timed with least_schedule; the lexicographically
    smallest argmin is returned. An internally inconsistent job makes every
    permutation infeasible and raises InfeasibleError for the instance.
    """
    if inst.n > cap:
        raise CapExceededError(f"n = {inst.n} exceeds the cap of {cap}")
    for i in range(inst.n):
        if not job_feasible(inst, i):
            raise InfeasibleError(
                f"job {i} has inconsistent lags", job_cycle_witness(inst, i)
            )
    best: tuple[tuple[int, ...], int] | None = None
    for perm in itertools.permutations(range(inst.n)):
        try:
            sched = least_schedule(inst, MachineOrders.permutation(perm, inst.m))
        except InfeasibleError:  # cannot happen for permutations of feasible jobs
            continue
        value = evaluate_criterion(inst, sched, crit)
        if best is None or value < best[1]:
            best = (perm, value)
    assert best is not None
    return best


def brute_force_general(
    inst: Instance, crit: Criterion = Criterion.MAKESPAN, cap: int = 250_000
) -> tuple[MachineOrders, int]:
    """Best value over ALL per-machine order tuples ((n!)^m <= cap).

    Tuples whose opposing orders create cross-job positive cycles are
    skipped as infeasible; the lexicographically smallest argmin tuple is
    returned. Never worse than the permutation optimum.
    """
    total = math.factorial(inst.n) ** inst.m
    if total > cap:
        raise CapExceededError(f"(n!)^m = {total} exceeds the cap of {cap}")
    best: tuple[MachineOrders, int] | None = None
    for seqs in itertools.product(
        itertools.permutations(range(inst.n)), repeat=inst.m
    ):
        orders = MachineOrders(seqs)
        try:
            sched = least_schedule(inst, orders)
        except InfeasibleError:
            continue
        value = evaluate_criterion(inst, sched, crit)
        if best is None or value < best[1]:
            best = (orders, value)
    if best is None:
        raise AllInfeasibleError("every order tuple is infeasible")
    return best


#: Search family for find_nonperm_gap: tight two-machine instances with
#: mandatory finite max lags, where fixing one shared sequence hurts.
DEFAULT_GAP_PARAMS = GeneratorParams(
    n=3,
    m=2,
    p_range=(1, 5),
    lag_density=1.0,
    min_lag_range=(0, 2),
    max_lag_extra_range=(0, 3),
    pmax_unbounded=0.0,
)


def find_nonperm_gap(
    gen: GeneratorParams | None = None, seed: int = 0, budget: int = 10_000
) -> GapResult | None:
    """Search for an instance where non-permutation schedules strictly win.

    Samples up to ``budget`` instances from ``gen`` (two machines, few jobs,
    finite max lags) and compares the general brute-force optimum against the
    permutation optimum, returning the first strict gap with both certified
    values; None when the budget runs out.
    """
    gen = gen or DEFAULT_GAP_PARAMS
    if gen.n > 4 or gen.m != 2:
        raise ValueError("gap search is restricted to n <= 4, m = 2")
    if gen.pmax_unbounded != 0.0:
        raise ValueError("gap search requires finite max lags")
    rng = random.Random(seed)
    for _ in range(budget):
        inst = generate_instance(replace(gen, seed=rng.getrandbits(32)))
        if not all(job_feasible(inst, i) for i in range(inst.n)):
            continue
        _, perm_value = brute_force_permutation(inst, Criterion.MAKESPAN)
        try:
            orders, general_value = brute_force_general(inst, Criterion.MAKESPAN)
        except AllInfeasibleError:  # impossible with feasible jobs
            continue
        if general_value < perm_value:
            return GapResult(inst, perm_value, general_value, orders)
    return None
