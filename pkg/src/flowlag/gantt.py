"""Deterministic SVG Gantt rendering of a timed schedule.

One horizontal band per machine, one rectangle per operation at x = start,
width = processing time, labeled with the job index. All geometry is
integer arithmetic, so identical inputs render to byte-identical SVG.
"""

from __future__ import annotations

from .model import (
    Instance,
    InvalidScheduleError,
    Schedule,
    orders_from_schedule,
    validate_schedule,
)

#: Fill colors cycled by job index.
_PALETTE = (
    "#4e79a7",
    "#f28e2b",
    "#59a14f",
    "#e15759",
    "#b07aa1",
    "#edc949",
    "#76b7b2",
    "#ff9da7",
)

_SCALE = 24  # horizontal pixels per time unit
_BAND = 44  # vertical pixels per machine band
_BAR = 28  # rectangle height inside a band
_LEFT = 64  # label gutter
_TOP = 24  # headroom for the time axis


def render_gantt(inst: Instance, sched: Schedule) -> str:
    """Render a validated schedule as SVG text.

    The schedule is validated against the machine orders implied by its
    start times; violations raise InvalidScheduleError. Zero-length
    operations (dummy machines) are drawn as one-pixel markers so they
    stay visible.
    """
    orders = orders_from_schedule(inst, sched)
    violations = validate_schedule(inst, orders, sched)
    if violations:
        raise InvalidScheduleError(violations)

    horizon = 0
    for i in range(inst.n):
        for j in range(inst.m):
            horizon = max(horizon, int(sched.start[i, j]) + int(inst.p[i, j]))

    width = _LEFT + horizon * _SCALE + 16
    height = _TOP + inst.m * _BAND + 8
    pad = (_BAND - _BAR) // 2
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'font-family="monospace" font-size="12">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="#ffffff"/>',
    ]
    # axis endpoints
    axis_y = _TOP + inst.m * _BAND
    out.append(
        f'<line x1="{_LEFT}" y1="{axis_y}" x2="{_LEFT + horizon * _SCALE}" '
        f'y2="{axis_y}" stroke="#333333"/>'
    )
    out.append(f'<text x="{_LEFT}" y="{_TOP - 8}" fill="#333333">t=0</text>')
    out.append(
        f'<text x="{_LEFT + horizon * _SCALE}" y="{_TOP - 8}" fill="#333333" '
        f'text-anchor="end">t={horizon}</text>'
    )
    for j in range(inst.m):
        y = _TOP + j * _BAND
        out.append(
            f'<text x="8" y="{y + _BAND // 2 + 4}" fill="#333333">M{j}</text>'
        )
        for i in orders.orders[j]:
            s = int(sched.start[i, j])
            p = int(inst.p[i, j])
            x = _LEFT + s * _SCALE
            w = p * _SCALE if p > 0 else 1  # zero-length op: 1-pixel marker
            color = _PALETTE[i % len(_PALETTE)]
            out.append(
                f'<rect x="{x}" y="{y + pad}" width="{w}" height="{_BAR}" '
                f'fill="{color}" stroke="#333333"/>'
            )
            out.append(
                f'<text x="{x + w // 2}" y="{y + pad + _BAR // 2 + 4}" '
                f'fill="#ffffff" text-anchor="middle">{i}</text>'
            )
    out.append("</svg>")
    return "\n".join(out) + "\n"
