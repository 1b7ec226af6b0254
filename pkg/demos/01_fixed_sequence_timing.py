"""
Timing a fixed job sequence under minimal and maximal time lags
===============================================================

Once every machine's processing order is fixed, the earliest feasible
start times solve a system of difference constraints. This script builds
a small two-job, two-machine instance, times it, and then shows what the
infeasibility certificate looks like when the lags contradict each other.
"""

from flowlag import (
    Criterion,
    InfeasibleError,
    Instance,
    MachineOrders,
    TimeLag,
    evaluate_criterion,
    least_schedule,
)

# Job 0 runs 1 then 5 time units, job 1 runs 1 then 1. Both jobs must start
# their second operation the instant the first completes (an exact lag:
# min = max = 0). Think of molten steel that cannot be allowed to cool.
inst = Instance(
    p=[[1, 5], [1, 1]],
    lags=(
        TimeLag(job=0, from_op=0, to_op=1, min_lag=0, max_lag=0),
        TimeLag(job=1, from_op=0, to_op=1, min_lag=0, max_lag=0),
    ),
)

# Process both machines in job order 0, 1.
orders = MachineOrders.permutation((0, 1), m=2)
sched = least_schedule(inst, orders)

print("start times (rows = jobs, columns = machines):")
print(sched.start)
print("completions:")
print(sched.completions(inst))
print("makespan:", evaluate_criterion(inst, sched, Criterion.MAKESPAN))

# Job 1's machine-1 operation cannot start before time 6 (machine 1 is busy
# with job 0 until then), so the exact lag forces its machine-0 operation to
# wait until time 5. The least schedule leaves machine 0 idle on purpose:
# maximal lags make "start everything as early as possible" wrong, and the
# longest-path computation is what recovers the correct earliest times.

# Now make the lags contradictory: the second operation must start at least
# 3 units after the first completes but also at most 2 units after.
bad = Instance(
    p=[[1, 1]],
    lags=(TimeLag(job=0, from_op=0, to_op=1, min_lag=3, max_lag=2),),
)
try:
    least_schedule(bad, MachineOrders.permutation((0,), m=2))
except InfeasibleError as err:
    # The witness is a positive cycle in the constraint graph: following its
    # arcs forces a start time to exceed itself, which no schedule can do.
    print("infeasible:", err)
    print("cycle weight:", err.witness.weight)
