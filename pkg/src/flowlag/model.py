"""Problem data: instances, time lags, machine orders, schedules, criteria.

Everything is an immutable value; all operations here are pure functions.
Times are integers throughout so that comparisons in search are exact and
results reproduce bit-for-bit.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Sequence

import numpy as np

#: Distinguished value for a missing maximal lag. Kept symbolic (never a
#: large sentinel integer) so longest-path arithmetic cannot overflow.
UNBOUNDED = None


class SchedulingError(Exception):
    """Base class for errors raised by this package."""


class MissingDueDatesError(SchedulingError):
    """A due-date dependent computation was requested without due dates."""


class MissingReleaseDatesError(SchedulingError):
    """Release-date embedding requested on an instance without release dates."""


class InvalidInstanceError(SchedulingError):
    """An instance failed validation. ``defects`` lists every violation."""

    def __init__(self, defects: Sequence[str]):
        super().__init__("invalid instance: " + "; ".join(defects))
        self.defects = list(defects)


class InvalidScheduleError(SchedulingError):
    """A schedule failed validation. ``violations`` lists every violation."""

    def __init__(self, violations: Sequence[str]):
        super().__init__("invalid schedule: " + "; ".join(violations))
        self.violations = list(violations)


def _frozen_array(value, dtype=None) -> np.ndarray:
    """Copy ``value`` into a read-only array; ragged input becomes dtype=object."""
    try:
        arr = np.array(value, dtype=dtype)
    except (ValueError, TypeError):
        arr = np.array(value, dtype=object)
    arr.setflags(write=False)
    return arr


def _array_equal(a: np.ndarray | None, b: np.ndarray | None) -> bool:
    if a is None or b is None:
        return a is None and b is None
    return a.shape == b.shape and bool(np.all(a == b))


@dataclass(frozen=True)
class TimeLag:
    """Bounds on the time elapsed between two operations of one job.

    The lag constrains start(to_op) - completion(from_op) to lie in
    [min_lag, max_lag]; max_lag may be UNBOUNDED. A min_lag of zero
    coincides with the implicit flowshop precedence. max_lag < min_lag is
    representable and surfaces as timing infeasibility, never as a
    constructor error.
    """

    job: int
    from_op: int
    to_op: int
    min_lag: int = 0
    max_lag: int | None = UNBOUNDED


@dataclass(frozen=True, eq=False)
class Instance:
    """A flowshop instance: ``p[i, j]`` is job i's processing time on machine j.

    Operation j of every job runs on machine j, in increasing j. ``release``
    and ``due``, when present, are length-n vectors of release dates and due
    dates. ``n`` and ``m`` are derived from ``p`` when omitted; passing them
    explicitly lets validation report dimension mismatches.
    """

    p: np.ndarray
    lags: tuple[TimeLag, ...] = ()
    release: np.ndarray | None = None
    due: np.ndarray | None = None
    n: int | None = None
    m: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "p", _frozen_array(self.p))
        object.__setattr__(self, "lags", tuple(self.lags))
        for name in ("release", "due"):
            value = getattr(self, name)
            if value is not None:
                object.__setattr__(self, name, _frozen_array(value))
        shape = self.p.shape if self.p.ndim == 2 else (0, 0)
        if self.n is None:
            object.__setattr__(self, "n", int(shape[0]))
        if self.m is None:
            object.__setattr__(self, "m", int(shape[1]))

    def __eq__(self, other):
        if not isinstance(other, Instance):
            return NotImplemented
        return (
            self.n == other.n
            and self.m == other.m
            and _array_equal(self.p, other.p)
            and self.lags == other.lags
            and _array_equal(self.release, other.release)
            and _array_equal(self.due, other.due)
        )


@dataclass(frozen=True, eq=False)
class MachineOrders:
    """One job sequence per machine; identical sequences form a permutation."""

    orders: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(
            self, "orders", tuple(tuple(int(x) for x in seq) for seq in self.orders)
        )

    @classmethod
    def permutation(cls, seq: Sequence[int], m: int) -> "MachineOrders":
        """All ``m`` machines process jobs in the single sequence ``seq``."""
        one = tuple(int(x) for x in seq)
        return cls(tuple(one for _ in range(m)))

    @property
    def m(self) -> int:
        return len(self.orders)

    @property
    def is_permutation(self) -> bool:
        return all(seq == self.orders[0] for seq in self.orders)

    def __eq__(self, other):
        if not isinstance(other, MachineOrders):
            return NotImplemented
        return self.orders == other.orders

    def __hash__(self):
        return hash(self.orders)


@dataclass(frozen=True, eq=False)
class Schedule:
    """Start times per (job, machine); completions follow by adding ``p``."""

    start: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "start", _frozen_array(self.start))

    def completions(self, inst: Instance) -> np.ndarray:
        return self.start + inst.p

    def __eq__(self, other):
        if not isinstance(other, Schedule):
            return NotImplemented
        return _array_equal(self.start, other.start)


class Criterion(Enum):
    """Regular objectives: nondecreasing in every job completion time."""

    MAKESPAN = "cmax"
    MAX_LATENESS = "lmax"
    TOTAL_COMPLETION = "sumc"


def evaluate_criterion(inst: Instance, sched: Schedule, crit: Criterion) -> int:
    """Evaluate ``crit`` on the final completion times of ``sched``."""
    final = sched.start[:, inst.m - 1] + inst.p[:, inst.m - 1]
    if crit is Criterion.MAKESPAN:
        return int(final.max())
    if crit is Criterion.MAX_LATENESS:
        if inst.due is None:
            raise MissingDueDatesError("maximum lateness needs due dates")
        return int((final - inst.due).max())
    if crit is Criterion.TOTAL_COMPLETION:
        return int(final.sum())
    raise ValueError(f"unknown criterion: {crit!r}")


def _is_int(x) -> bool:
    return isinstance(x, (int, np.integer)) and not isinstance(x, bool)


def validate_instance(inst: Instance) -> list[str]:
    """Return a description of every violated instance invariant (empty if none).

    Validation never raises; callers that need a hard failure wrap the
    result in InvalidInstanceError.
    """
    defects: list[str] = []
    n, m = inst.n, inst.m
    if not _is_int(n) or n <= 0:
        defects.append(f"n must be a positive integer (got {n})")
    if not _is_int(m) or m <= 0:
        defects.append(f"m must be a positive integer (got {m})")

    p = inst.p
    if p.ndim != 2 or p.dtype.kind not in "iu":
        defects.append("p is not a rectangular integer matrix")
    else:
        rows, cols = p.shape
        if rows != n:
            defects.append(f"p row count {rows} != n = {n}")
        if cols != m:
            defects.append(f"p column count {cols} != m = {m}")
        for i, j in zip(*np.nonzero(p < 0)):
            defects.append(f"p[{i},{j}] = {p[i, j]} is negative")

    seen: set[tuple[int, int, int]] = set()
    for idx, lag in enumerate(inst.lags):
        where = f"lag[{idx}] (job {lag.job}, {lag.from_op}->{lag.to_op})"
        if not _is_int(lag.job) or not (0 <= lag.job < n):
            defects.append(f"{where}: job index out of range [0,{n})")
        if not _is_int(lag.from_op) or not _is_int(lag.to_op):
            defects.append(f"{where}: operation indices must be integers")
            continue
        if lag.from_op >= lag.to_op:
            defects.append(f"{where}: from_op < to_op violated")
        if lag.from_op < 0 or lag.to_op >= m:
            defects.append(f"{where}: operation indices outside [0,{m})")
        if not _is_int(lag.min_lag) or lag.min_lag < 0:
            defects.append(f"{where}: min_lag must be a nonnegative integer")
        if lag.max_lag is not UNBOUNDED and (not _is_int(lag.max_lag) or lag.max_lag < 0):
            defects.append(f"{where}: max_lag must be UNBOUNDED or a nonnegative integer")
        key = (lag.job, lag.from_op, lag.to_op)
        if key in seen:
            defects.append(f"{where}: duplicate lag for this (job, from_op, to_op)")
        seen.add(key)

    for name, vec in (("release", inst.release), ("due", inst.due)):
        if vec is None:
            continue
        if vec.ndim != 1 or vec.dtype.kind not in "iu":
            defects.append(f"{name} is not an integer vector")
        elif len(vec) != n:
            defects.append(f"{name} length {len(vec)} != n = {n}")
        else:
            for (i,) in zip(*np.nonzero(vec < 0)):
                defects.append(f"{name}[{i}] = {vec[i]} is negative")

    return defects


def validate_schedule(inst: Instance, orders: MachineOrders, sched: Schedule) -> list[str]:
    """Check ``sched`` against flowshop structure, ``orders`` and all lags.

    Reports (never raises): operation precedence, machine capacity under the
    given per-machine orders, every min/max lag, and release dates.
    """
    n, m = inst.n, inst.m
    S = sched.start
    if S.ndim != 2 or S.shape != (n, m):
        return [f"schedule shape {S.shape} != ({n}, {m})"]
    violations: list[str] = []
    C = S + inst.p

    for i, j in zip(*np.nonzero(S < 0)):
        violations.append(f"negative start: S[{i},{j}] = {S[i, j]}")

    for i in range(n):
        for j in range(m - 1):
            if S[i, j + 1] < C[i, j]:
                violations.append(
                    f"precedence: job {i} op {j + 1} starts {S[i, j + 1]} < {C[i, j]}"
                )

    if len(orders.orders) != m:
        violations.append(f"orders machine count {len(orders.orders)} != m = {m}")
        return violations
    for j, seq in enumerate(orders.orders):
        if sorted(seq) != list(range(n)):
            violations.append(f"orders[{j}] is not a permutation of the jobs")
            continue
        for a, b in zip(seq, seq[1:]):
            if S[b, j] < C[a, j]:
                violations.append(
                    f"machine overlap: {S[b, j]} < {C[a, j]}"
                    f" (machine {j}, job {b} after job {a})"
                )

    for lag in inst.lags:
        gap = int(S[lag.job, lag.to_op] - C[lag.job, lag.from_op])
        s_to = int(S[lag.job, lag.to_op])
        c_from = int(C[lag.job, lag.from_op])
        if gap < lag.min_lag:
            violations.append(
                f"min lag: {s_to} - {c_from} < {lag.min_lag}"
                f" (job {lag.job}, {lag.from_op}->{lag.to_op})"
            )
        if lag.max_lag is not UNBOUNDED and gap > lag.max_lag:
            violations.append(
                f"max lag: {s_to} - {c_from} > {lag.max_lag}"
                f" (job {lag.job}, {lag.from_op}->{lag.to_op})"
            )

    if inst.release is not None:
        for i in range(n):
            if S[i, 0] < inst.release[i]:
                violations.append(
                    f"release: job {i} starts {S[i, 0]} < r = {inst.release[i]}"
                )

    return violations


def orders_from_schedule(inst: Instance, sched: Schedule) -> MachineOrders:
    """Derive per-machine job orders from start times (ties by job index)."""
    S = sched.start
    return MachineOrders(
        tuple(
            tuple(sorted(range(inst.n), key=lambda i: (int(S[i, j]), i)))
            for j in range(inst.m)
        )
    )
