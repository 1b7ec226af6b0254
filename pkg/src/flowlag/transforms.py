"""Dummy-machine embeddings: release dates, tails, and max-lateness reduction.

Release dates can be folded into the processing network by prepending a
zero-time dummy machine whose minimal lag to the first real machine equals
each job's release date. Symmetrically, per-job tails append a zero-time
dummy final machine; choosing the tails as D - d_i turns minimizing maximum
lateness into minimizing makespan, shifted by the constant D.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum

import numpy as np

from .model import (
    UNBOUNDED,
    Instance,
    MissingDueDatesError,
    MissingReleaseDatesError,
    Schedule,
    TimeLag,
)


class TransformKind(Enum):
    RELEASE_EMBED = "release_embed"
    TAIL_EMBED = "tail_embed"


@dataclass(frozen=True)
class TransformedInstance:
    """An instance with one dummy machine added, plus the objective offset.

    For TAIL_EMBED produced by lmax_to_cmax, minimizing C_max on ``inst``
    and subtracting ``offset`` minimizes maximum lateness on the original.
    """

    inst: Instance
    kind: TransformKind
    offset: int = 0


def embed_release_dates(inst: Instance) -> TransformedInstance:
    """Replace release dates by a zero-time dummy first machine.

    The dummy operation of job i carries a minimal lag r_i (no maximal lag)
    to the first real operation; original lags shift one machine up. Under
    any permutation the least-schedule makespan is unchanged.
    """
    if inst.release is None:
        raise MissingReleaseDatesError("instance has no release dates to embed")
    n = inst.n
    p2 = np.hstack([np.zeros((n, 1), dtype=np.int64), np.asarray(inst.p, dtype=np.int64)])
    lags2 = [TimeLag(i, 0, 1, int(inst.release[i]), UNBOUNDED) for i in range(n)]
    lags2 += [
        replace(lag, from_op=lag.from_op + 1, to_op=lag.to_op + 1) for lag in inst.lags
    ]
    out = Instance(p=p2, lags=tuple(lags2), release=None, due=inst.due)
    return TransformedInstance(out, TransformKind.RELEASE_EMBED, offset=0)


def embed_tails(inst: Instance, q) -> TransformedInstance:
    """Append a zero-time dummy final machine enforcing per-job tails ``q``.

    The transformed makespan equals max_i (C[i, m-1] + q[i]) of the original
    schedule. Due dates are dropped: the final column changes meaning, so any
    lateness reading of the transformed instance would be bogus.
    """
    q = np.asarray(q, dtype=np.int64)
    if q.shape != (inst.n,):
        raise ValueError(f"q has shape {q.shape}, expected ({inst.n},)")
    if (q < 0).any():
        raise ValueError("tails must be nonnegative")
    n, m = inst.n, inst.m
    p2 = np.hstack([np.asarray(inst.p, dtype=np.int64), np.zeros((n, 1), dtype=np.int64)])
    lags2 = tuple(inst.lags) + tuple(
        TimeLag(i, m - 1, m, int(q[i]), UNBOUNDED) for i in range(n)
    )
    out = Instance(p=p2, lags=lags2, release=inst.release, due=None)
    return TransformedInstance(out, TransformKind.TAIL_EMBED, offset=0)


def lmax_to_cmax(inst: Instance) -> TransformedInstance:
    """Reduce maximum lateness to makespan via tails q_i = D - d_i, D = max d_i.

    The offset D keeps every tail nonnegative; for any schedule,
    C_max(transformed) - D equals L_max(original), so optimal permutations
    coincide.
    """
    if inst.due is None:
        raise MissingDueDatesError("instance has no due dates")
    D = int(np.max(inst.due)) if inst.n > 0 else 0
    q = D - np.asarray(inst.due, dtype=np.int64)
    t = embed_tails(inst, q)
    return replace(t, offset=D)


def project_schedule(t: TransformedInstance, sched: Schedule) -> Schedule:
    """Drop the dummy machine's column, recovering a schedule of the original."""
    n, m_t = t.inst.n, t.inst.m
    if sched.start.shape != (n, m_t):
        raise ValueError(
            f"schedule shape {sched.start.shape} does not match transformed ({n}, {m_t})"
        )
    if t.kind is TransformKind.RELEASE_EMBED:
        return Schedule(sched.start[:, 1:])
    return Schedule(sched.start[:, :-1])
