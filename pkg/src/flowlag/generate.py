"""Seeded random instance generation for benchmarks and property suites."""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations

from .model import Instance, TimeLag, UNBOUNDED


@dataclass(frozen=True)
class GeneratorParams:
    """Sampling parameters; identical params (incl. seed) reproduce the instance.

    A lag is drawn for each successive operation pair with probability
    ``lag_density`` (for every from < to pair when ``arbitrary_lags``); its
    maximum is min_lag plus a draw from ``max_lag_extra_range``, or UNBOUNDED
    with probability ``pmax_unbounded``. ``release_range``/``due_range`` of
    None leave those vectors absent.
    """

    n: int
    m: int
    p_range: tuple[int, int] = (1, 100)
    lag_density: float = 0.5
    min_lag_range: tuple[int, int] = (0, 50)
    max_lag_extra_range: tuple[int, int] = (0, 50)
    pmax_unbounded: float = 0.0
    release_range: tuple[int, int] | None = None
    due_range: tuple[int, int] | None = None
    arbitrary_lags: bool = False
    seed: int = 0

    def __post_init__(self):
        if self.n < 1 or self.m < 1:
            raise ValueError("n and m must be positive")
        for name in ("p_range", "min_lag_range", "max_lag_extra_range"):
            lo, hi = getattr(self, name)
            if lo > hi:
                raise ValueError(f"{name} is empty: {lo} > {hi}")
        for name in ("release_range", "due_range"):
            rng = getattr(self, name)
            if rng is not None and rng[0] > rng[1]:
                raise ValueError(f"{name} is empty: {rng[0]} > {rng[1]}")
        if not 0.0 <= self.lag_density <= 1.0:
            raise ValueError("lag_density must lie in [0, 1]")
        if not 0.0 <= self.pmax_unbounded <= 1.0:
            raise ValueError("pmax_unbounded must lie in [0, 1]")


def generate_instance(params: GeneratorParams) -> Instance:
    """Draw one instance from ``params`` (deterministic in the seed)."""
    rng = random.Random(params.seed)
    n, m = params.n, params.m
    p = [[rng.randint(*params.p_range) for _ in range(m)] for _ in range(n)]

    if params.arbitrary_lags:
        pairs = list(combinations(range(m), 2))
    else:
        pairs = [(j, j + 1) for j in range(m - 1)]
    lags: list[TimeLag] = []
    for i in range(n):
        for f, t in pairs:
            if rng.random() >= params.lag_density:
                continue
            lo = rng.randint(*params.min_lag_range)
            if rng.random() < params.pmax_unbounded:
                hi = UNBOUNDED
            else:
                hi = lo + rng.randint(*params.max_lag_extra_range)
            lags.append(TimeLag(i, f, t, lo, hi))

    release = None
    if params.release_range is not None:
        release = [rng.randint(*params.release_range) for _ in range(n)]
    due = None
    if params.due_range is not None:
        due = [rng.randint(*params.due_range) for _ in range(n)]

    return Instance(p=p, lags=tuple(lags), release=release, due=due)
