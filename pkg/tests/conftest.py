"""Shared test helpers: brute-force oracles and random instance factories."""

from __future__ import annotations

import random

import numpy as np

from flowlag import (
    Criterion,
    GeneratorParams,
    Instance,
    MachineOrders,
    TimeLag,
    UNBOUNDED,
    generate_instance,
)


def exhaustive_feasible_starts(
    inst: Instance, orders: MachineOrders, horizon: int
) -> np.ndarray:
    """Every feasible integer start matrix with entries in [0, horizon].

    Vectorized over all (horizon+1)^(n*m) candidate matrices, so only usable
    for tiny instances. Returns an (F, n, m) array. This is the independent
    ground truth the timing engine is checked against: it knows nothing about
    longest paths, it just filters raw matrices by the constraint definitions.
    """
    n, m = inst.n, inst.m
    cells = n * m
    side = horizon + 1
    grids = np.meshgrid(*([np.arange(side)] * cells), indexing="ij")
    S = np.stack([g.ravel() for g in grids], axis=1).reshape(-1, n, m)

    p = np.asarray(inst.p)
    mask = np.ones(len(S), dtype=bool)
    for i in range(n):
        for j in range(m - 1):
            mask &= S[:, i, j + 1] >= S[:, i, j] + p[i, j]
    for j, seq in enumerate(orders.orders):
        for a, b in zip(seq, seq[1:]):
            mask &= S[:, b, j] >= S[:, a, j] + p[a, j]
    for lag in inst.lags:
        gap = S[:, lag.job, lag.to_op] - (S[:, lag.job, lag.from_op] + p[lag.job, lag.from_op])
        mask &= gap >= lag.min_lag
        if lag.max_lag is not UNBOUNDED:
            mask &= gap <= lag.max_lag
    if inst.release is not None:
        for i in range(n):
            mask &= S[:, i, 0] >= int(inst.release[i])
    return S[mask]


def criterion_values(inst: Instance, starts: np.ndarray, crit: Criterion) -> np.ndarray:
    """Vectorized objective over a batch of start matrices."""
    final = starts[:, :, -1] + np.asarray(inst.p)[:, -1]
    if crit is Criterion.MAKESPAN:
        return final.max(axis=1)
    if crit is Criterion.MAX_LATENESS:
        return (final - np.asarray(inst.due)).max(axis=1)
    if crit is Criterion.TOTAL_COMPLETION:
        return final.sum(axis=1)
    raise ValueError(crit)


def tiny_instance(rng: random.Random, with_due: bool = True) -> Instance:
    """Random n<=2, m<=2 instance with every value <= 3 (horizon-12 domain)."""
    n = rng.randint(1, 2)
    m = rng.randint(1, 2)
    params = GeneratorParams(
        n=n,
        m=m,
        p_range=(0, 3),
        lag_density=0.7,
        min_lag_range=(0, 3),
        max_lag_extra_range=(0, 3),
        pmax_unbounded=0.5,
        release_range=(0, 3) if rng.random() < 0.5 else None,
        due_range=(0, 3) if with_due else None,
        seed=rng.getrandbits(32),
    )
    return generate_instance(params)


def medium_instance(
    rng: random.Random,
    n_max: int = 7,
    m_max: int = 4,
    with_release: bool = False,
    with_due: bool = False,
) -> Instance:
    """Random instance in the oracle-checkable range (brute force fits)."""
    params = GeneratorParams(
        n=rng.randint(2, n_max),
        m=rng.randint(1, m_max),
        p_range=(1, 9),
        lag_density=0.5,
        min_lag_range=(0, 5),
        max_lag_extra_range=(0, 5),
        pmax_unbounded=0.5,
        release_range=(0, 10) if with_release else None,
        due_range=(0, 30) if with_due else None,
        seed=rng.getrandbits(32),
    )
    return generate_instance(params)


def arbitrary_lags(rng: random.Random, n: int, m: int) -> tuple[TimeLag, ...]:
    """Lags over arbitrary pairs, allowing max < min, for infeasibility tests."""
    lags = []
    for i in range(n):
        pairs = [(a, b) for a in range(m) for b in range(a + 1, m)]
        rng.shuffle(pairs)
        for a, b in pairs[: rng.randint(0, len(pairs))]:
            lo = rng.randint(0, 4)
            hi = rng.choice([UNBOUNDED, rng.randint(0, 6)])  # may undercut lo
            lags.append(TimeLag(i, a, b, min_lag=lo, max_lag=hi))
    return tuple(lags)
