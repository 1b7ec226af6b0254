"""
Rendering a schedule as an SVG Gantt chart
==========================================

Schedules serialize to a small JSON document and render to SVG with one
band per machine and one colored bar per operation. The renderer refuses
schedules that violate the instance, so a chart is also a certificate.
"""

from pathlib import Path

from flowlag import (
    GeneratorParams,
    MachineOrders,
    generate_instance,
    least_schedule,
    render_gantt,
    serialize_schedule,
    solve_bnb,
)

inst = generate_instance(
    GeneratorParams(
        n=5,
        m=3,
        p_range=(1, 8),
        lag_density=0.6,
        min_lag_range=(0, 4),
        max_lag_extra_range=(0, 4),
        pmax_unbounded=0.5,
        seed=20,
    )
)

# Solve, then re-time the winning permutation to get concrete start times.
result = solve_bnb(inst)
orders = MachineOrders.permutation(result.best_perm, inst.m)
sched = least_schedule(inst, orders)
print("optimal permutation:", result.best_perm, "makespan:", result.value)

print("schedule document:")
print(serialize_schedule(sched))

svg = render_gantt(inst, sched)
out = Path("gantt.svg")
out.write_text(svg, encoding="utf-8")
print(f"wrote {out} ({len(svg)} bytes); open it in any browser")

# The output is deterministic: same schedule, same bytes. Useful when
# charts are committed as golden files.
assert render_gantt(inst, sched) == svg
