"""Componentwise-least timing of fixed machine orders.

For fixed per-machine job orders, every feasible schedule satisfies a system
of difference constraints S_v >= S_u + w. The longest-path distances from a
source node are the unique componentwise-least solution, so they minimize
every regular criterion at once. Maximal lags contribute backward arcs, which
destroys acyclicity; a label-correcting relaxation (Bellman-Ford family)
handles that and certifies infeasibility with a positive-weight cycle.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .model import (
    UNBOUNDED,
    Instance,
    MachineOrders,
    Schedule,
    SchedulingError,
)

_NEG = float("-inf")

#: Node id of the virtual source (start time 0) in constraint graphs.
SOURCE = 0


@dataclass(frozen=True)
class CycleWitness:
    """A positive-weight cycle over operation nodes, proving infeasibility.

    ``nodes`` lists (job, op) coordinates in arc direction; the cycle closes
    from the last node back to the first. ``weight`` is the (positive) sum of
    the arc weights along it.
    """

    nodes: tuple[tuple[int, int], ...]
    weight: int

    def __str__(self):
        path = " -> ".join(f"({i},{j})" for i, j in (*self.nodes, self.nodes[0]))
        return f"positive cycle {path} of weight {self.weight}"


class InfeasibleError(SchedulingError):
    """No feasible schedule exists; ``witness`` carries the positive cycle."""

    def __init__(self, message: str, witness: CycleWitness | None = None):
        if witness is not None:
            message = f"{message}: {witness}"
        super().__init__(message)
        self.witness = witness


@dataclass(frozen=True)
class ConstraintGraph:
    """Difference-constraint graph for an instance under fixed orders.

    Nodes are SOURCE plus one node per operation; ``node(i, j)`` gives the id
    of job i's operation on machine j. Each arc (u, v, w) encodes
    S_v >= S_u + w with S_source = 0. Parallel arcs are kept as built.
    """

    n: int
    m: int
    arcs: tuple[tuple[int, int, int], ...]

    @property
    def node_count(self) -> int:
        return self.n * self.m + 1

    def node(self, job: int, op: int) -> int:
        return 1 + job * self.m + op

    def coords(self, node: int) -> tuple[int, int]:
        return divmod(node - 1, self.m)


def _adjacency(
    p: list[list[int]],
    lags,
    release,
    seqs: Sequence[Sequence[int]],
    jobs: Sequence[int],
) -> list[list[tuple[int, int]]]:
    """Outgoing-arc lists over SOURCE + the operations of ``jobs``.

    ``seqs`` gives the per-machine processing order restricted to ``jobs``.
    Row r of the node numbering is jobs[r], so node(job) = 1 + row*m + op.
    """
    m = len(seqs)
    row = {job: r for r, job in enumerate(jobs)}
    out: list[list[tuple[int, int]]] = [[] for _ in range(1 + len(jobs) * m)]

    def node(job: int, op: int) -> int:
        return 1 + row[job] * m + op

    for job in jobs:
        w = int(release[job]) if release is not None else 0
        out[SOURCE].append((node(job, 0), w))
    for job in jobs:
        for j in range(m - 1):
            out[node(job, j)].append((node(job, j + 1), p[job][j]))
    for lag in lags:
        if lag.job not in row:
            continue
        u, v = node(lag.job, lag.from_op), node(lag.job, lag.to_op)
        span = p[lag.job][lag.from_op]
        out[u].append((v, span + lag.min_lag))
        if lag.max_lag is not UNBOUNDED:
            out[v].append((u, -(span + lag.max_lag)))
    for j, seq in enumerate(seqs):
        for a, b in zip(seq, seq[1:]):
            out[node(a, j)].append((node(b, j), p[a][j]))
    return out


def build_constraint_graph(inst: Instance, orders: MachineOrders) -> ConstraintGraph:
    """Build the full difference-constraint graph for ``inst`` under ``orders``."""
    if len(orders.orders) != inst.m:
        raise ValueError(f"orders cover {len(orders.orders)} machines, expected {inst.m}")
    for j, seq in enumerate(orders.orders):
        if sorted(seq) != list(range(inst.n)):
            raise ValueError(f"orders[{j}] is not a permutation of all {inst.n} jobs")
    out = _adjacency(
        inst.p.tolist(), inst.lags, inst.release, orders.orders, range(inst.n)
    )
    arcs = tuple((u, v, w) for u, rest in enumerate(out) for v, w in rest)
    return ConstraintGraph(inst.n, inst.m, arcs)


def _longest_paths(out: list[list[tuple[int, int]]], dist: list):
    """Relax to the least fixpoint of the difference system, or find a cycle.

    ``dist`` holds initial lower bounds (-inf for unconstrained nodes) and is
    updated in place. Nodes are swept in id order; N-1 sweeps suffice for an
    N-node graph, and one further improving sweep certifies a positive cycle.
    Returns None on success, or (cycle_node_ids, weight) on infeasibility.
    """
    nn = len(out)
    pred: list[tuple[int, int] | None] = [None] * nn

    converged = False
    for _ in range(max(nn - 1, 1)):
        changed = False
        for u in range(nn):
            du = dist[u]
            if du == _NEG:
                continue
            for v, w in out[u]:
                nd = du + w
                if nd > dist[v]:
                    dist[v] = nd
                    pred[v] = (u, w)
                    changed = True
        if not changed:
            converged = True
            break
    if converged:
        return None

    # Detection sweep: improvement past the Bellman-Ford bound pins a positive
    # cycle, recovered by walking predecessor links until a node repeats.
    improved = False
    for u in range(nn):
        du = dist[u]
        if du == _NEG:
            continue
        for v, w in out[u]:
            if du + w > dist[v]:
                improved = True
                dist[v] = du + w
                pred[v] = (u, w)
                cycle = _extract_cycle(pred, v)
                if cycle is not None:
                    return cycle
    if improved:
        raise RuntimeError("relaxation did not converge but no cycle was recovered")
    return None


def _extract_cycle(pred, start: int):
    seen: dict[int, int] = {}
    chain: list[int] = []
    x = start
    while x is not None and x not in seen:
        seen[x] = len(chain)
        chain.append(x)
        link = pred[x]
        x = link[0] if link is not None else None
    if x is None:
        return None
    loop = chain[seen[x]:]
    weight = sum(pred[y][1] for y in loop)
    # pred links point backwards, so the forward node order is reversed
    # except for the anchor node.
    nodes = [loop[0]] + list(reversed(loop[1:]))
    if weight <= 0:
        raise RuntimeError(f"recovered cycle has nonpositive weight {weight}")
    return nodes, weight


def _solve_orders(inst: Instance, seqs, jobs: list[int]) -> list[list[int]]:
    """Least start times for the operations of ``jobs`` under orders ``seqs``.

    Returns one start row per entry of ``jobs`` (in that order). Raises
    InfeasibleError with a cycle witness when the system has no solution.
    """
    m = inst.m
    out = _adjacency(inst.p.tolist(), inst.lags, inst.release, seqs, jobs)
    dist: list = [_NEG] * len(out)
    dist[SOURCE] = 0
    cycle = _longest_paths(out, dist)
    if cycle is not None:
        ids, weight = cycle
        coords = tuple((jobs[(x - 1) // m], (x - 1) % m) for x in ids)
        raise InfeasibleError(
            "no feasible schedule for the given orders",
            CycleWitness(coords, weight),
        )
    return [
        [dist[1 + r * m + j] for j in range(m)] for r in range(len(jobs))
    ]


def least_schedule(inst: Instance, orders: MachineOrders) -> Schedule:
    """Componentwise-least feasible schedule for ``inst`` under ``orders``.

    Every feasible schedule under the same orders dominates the result
    componentwise, so the result simultaneously minimizes every regular
    criterion. Raises InfeasibleError (with a CycleWitness) when the
    constraint graph contains a positive cycle.
    """
    if len(orders.orders) != inst.m:
        raise ValueError(f"orders cover {len(orders.orders)} machines, expected {inst.m}")
    starts = _solve_orders(inst, orders.orders, list(range(inst.n)))
    return Schedule(np.array(starts, dtype=np.int64).reshape(inst.n, inst.m))


def prefix_schedule(inst: Instance, seq: Sequence[int]) -> Schedule:
    """Least schedule of the jobs in ``seq`` alone, in permutation order.

    Row r of the result times job seq[r]. Start times agree with any
    permutation extending ``seq`` (extensions only append constraints on new
    operations), which is what makes prefix bounds in search sound.
    """
    jobs = [int(x) for x in seq]
    starts = _solve_orders(inst, [jobs] * inst.m, jobs)
    return Schedule(np.array(starts, dtype=np.int64).reshape(len(jobs), inst.m))


def internal_arcs(inst: Instance, job: int) -> list[tuple[int, int, int]]:
    """The job's own difference arcs over its m operation nodes."""
    p = inst.p[job].tolist()
    arcs = [(j, j + 1, p[j]) for j in range(inst.m - 1)]
    for lag in inst.lags:
        if lag.job != job:
            continue
        span = p[lag.from_op]
        arcs.append((lag.from_op, lag.to_op, span + lag.min_lag))
        if lag.max_lag is not UNBOUNDED:
            arcs.append((lag.to_op, lag.from_op, -(span + lag.max_lag)))
    return arcs


def least_job_starts(
    inst: Instance, job: int, floor: Sequence[int]
) -> list[int] | None:
    """Least starts of one job's operations given per-machine lower bounds.

    ``floor[j]`` is the earliest allowed start on machine j (machine
    availability; release dates are NOT applied here). Returns None when the
    job's internal constraints are inconsistent.
    """
    return _floor_starts(inst.m, internal_arcs(inst, job), floor)


def _floor_starts(m: int, arcs, floor: Sequence[int]) -> list[int] | None:
    dist = [int(x) for x in floor]
    for _ in range(max(m - 1, 1)):
        changed = False
        for u, v, w in arcs:
            nd = dist[u] + w
            if nd > dist[v]:
                dist[v] = nd
                changed = True
        if not changed:
            return dist
    for u, v, w in arcs:
        if dist[u] + w > dist[v]:
            return None
    return dist


def job_feasible(inst: Instance, job: int) -> bool:
    """True iff the job's internal lag system has no positive cycle."""
    return _floor_starts(inst.m, internal_arcs(inst, job), [0] * inst.m) is not None


def job_cycle_witness(inst: Instance, job: int) -> CycleWitness | None:
    """A positive cycle inside one job's constraints, or None if consistent."""
    arcs = internal_arcs(inst, job)
    out: list[list[tuple[int, int]]] = [[] for _ in range(inst.m)]
    for u, v, w in arcs:
        out[u].append((v, w))
    dist: list = [0] * inst.m
    cycle = _longest_paths(out, dist)
    if cycle is None:
        return None
    ids, weight = cycle
    return CycleWitness(tuple((job, x) for x in ids), weight)


def internal_tail(inst: Instance, job: int, k: int) -> int:
    """Mandatory span from completing operation k to the job's final completion.

    Longest path over the job's processing times and minimal lags only
    (maximal lags never shorten completions, so dropping them keeps the value
    a valid lower bound): in any feasible schedule,
    C[job, m-1] >= C[job, k] + internal_tail(inst, job, k).
    """
    m = inst.m
    p = inst.p[job].tolist()
    dist = [_NEG] * m
    dist[k] = 0
    fwd: list[list[tuple[int, int]]] = [[] for _ in range(m)]
    for j in range(m - 1):
        fwd[j].append((j + 1, p[j]))
    for lag in inst.lags:
        if lag.job == job:
            fwd[lag.from_op].append((lag.to_op, p[lag.from_op] + lag.min_lag))
    # forward arcs only: one ascending sweep settles the DAG
    for j in range(k, m):
        dj = dist[j]
        if dj == _NEG:
            continue
        for v, w in fwd[j]:
            if dj + w > dist[v]:
                dist[v] = dj + w
    return int(dist[m - 1]) + p[m - 1] - p[k]
