"""Polynomial solver for the two-machine min-lag problem with machine 1 fixed.

With only minimal lags, cross-machine constraints all run forward, so for a
fixed machine-1 sequence the second machine reduces to single-machine
makespan minimization with release dates: schedule machine 1 as early as
possible (delaying it can only push machine-2 availabilities up), then run
machine 2 greedily in nondecreasing availability order, which is optimal for
that reduction.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .model import Instance, MachineOrders, Schedule, UNBOUNDED


def f2_minlag_given_m1(
    inst: Instance, m1_order: Sequence[int]
) -> tuple[MachineOrders, Schedule]:
    """Best schedule (over all machine-2 orders) for a fixed machine-1 order.

    Requires m = 2 and no finite maximal lags. The returned makespan is
    minimal among all schedules processing machine 1 in ``m1_order``; the
    machine-2 order is nondecreasing availability a_i = C[i,0] + min_lag_i,
    ties broken by machine-1 position.
    """
    if inst.m != 2:
        raise ValueError(f"requires a two-machine instance, got m = {inst.m}")
    for lag in inst.lags:
        if lag.max_lag is not UNBOUNDED:
            raise ValueError("requires minimal time lags only (finite max lag found)")
    m1 = [int(x) for x in m1_order]
    if sorted(m1) != list(range(inst.n)):
        raise ValueError("m1_order is not a permutation of the jobs")

    min_lag = {lag.job: lag.min_lag for lag in inst.lags}
    start = np.zeros((inst.n, 2), dtype=np.int64)

    t = 0
    avail: dict[int, int] = {}
    for i in m1:
        r = int(inst.release[i]) if inst.release is not None else 0
        s = max(t, r)
        start[i, 0] = s
        t = s + int(inst.p[i, 0])
        avail[i] = t + min_lag.get(i, 0)

    pos = {job: k for k, job in enumerate(m1)}
    m2 = sorted(range(inst.n), key=lambda i: (avail[i], pos[i]))
    t = 0
    for i in m2:
        s = max(t, avail[i])
        start[i, 1] = s
        t = s + int(inst.p[i, 1])

    return MachineOrders((tuple(m1), tuple(m2))), Schedule(start)
