"""Constructive heuristics: lag-aware NEH insertion and Johnson's rule."""

from __future__ import annotations

from typing import Sequence

from .model import Criterion, Instance, MissingDueDatesError, UNBOUNDED
from .timing import InfeasibleError, job_cycle_witness, job_feasible, prefix_schedule


def _partial_value(inst: Instance, seq: Sequence[int], crit: Criterion) -> int:
    """Exact timed objective of the jobs in ``seq``, ignoring the others."""
    sched = prefix_schedule(inst, seq)
    final = [
        int(sched.start[r, inst.m - 1] + inst.p[job, inst.m - 1])
        for r, job in enumerate(seq)
    ]
    if crit is Criterion.MAKESPAN:
        return max(final)
    if crit is Criterion.MAX_LATENESS:
        if inst.due is None:
            raise MissingDueDatesError("maximum lateness needs due dates")
        return max(c - int(inst.due[job]) for c, job in zip(final, seq))
    if crit is Criterion.TOTAL_COMPLETION:
        return sum(final)
    raise ValueError(f"unknown criterion: {crit!r}")


def neh_insertion(
    inst: Instance, crit: Criterion = Criterion.MAKESPAN
) -> tuple[tuple[int, ...], int]:
    """NEH-style insertion adapted to time lags.

    Jobs are taken by nonincreasing effective span (processing sum plus the
    job's minimal lags, since lags stretch a job just like processing does)
    and each is inserted at the position with the best exact timed objective,
    ties going to the leftmost position. Returns the permutation and its
    timed objective value, an upper bound on the permutation optimum.
    """
    for i in range(inst.n):
        if not job_feasible(inst, i):
            raise InfeasibleError(
                f"job {i} has inconsistent lags", job_cycle_witness(inst, i)
            )
    span = {
        i: int(inst.p[i].sum()) + sum(l.min_lag for l in inst.lags if l.job == i)
        for i in range(inst.n)
    }
    order = sorted(range(inst.n), key=lambda i: (-span[i], i))

    seq: list[int] = []
    value = 0
    for job in order:
        best_val: int | None = None
        best_seq: list[int] | None = None
        for pos in range(len(seq) + 1):
            trial = seq[:pos] + [job] + seq[pos:]
            val = _partial_value(inst, trial, crit)
            if best_val is None or val < best_val:
                best_val, best_seq = val, trial
        assert best_seq is not None and best_val is not None
        seq, value = best_seq, best_val
    return tuple(seq), value


def johnson_order(inst: Instance) -> tuple[int, ...]:
    """Johnson's rule for the classical two-machine flowshop.

    Only valid for m = 2 with no effective lags (none, or all with zero
    minimum and unbounded maximum): jobs with p[i,0] < p[i,1] first in
    ascending p[i,0], then the rest in descending p[i,1], ties by job index.
    Optimal for makespan on that domain.
    """
    if inst.m != 2:
        raise ValueError(f"Johnson's rule needs m = 2, got m = {inst.m}")
    for lag in inst.lags:
        if lag.min_lag != 0 or lag.max_lag is not UNBOUNDED:
            raise ValueError("Johnson's rule does not support effective time lags")
    first = sorted(
        (i for i in range(inst.n) if inst.p[i, 0] < inst.p[i, 1]),
        key=lambda i: (int(inst.p[i, 0]), i),
    )
    rest = sorted(
        (i for i in range(inst.n) if inst.p[i, 0] >= inst.p[i, 1]),
        key=lambda i: (-int(inst.p[i, 1]), i),
    )
    return tuple(first + rest)
