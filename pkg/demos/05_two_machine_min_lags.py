"""
Two machines, minimal lags only: the polynomial special case
============================================================

With two machines and only minimal time lags, the second machine's best
order for a fixed machine-1 order is computable greedily: sort jobs by
the time they become available to machine 2 (completion on machine 1
plus their lag). This script runs the greedy solver, verifies it against
exhaustive search over machine-2 orders, and revisits Johnson's rule for
the lag-free classic.
"""

import itertools

from flowlag import (
    Criterion,
    GeneratorParams,
    Instance,
    MachineOrders,
    TimeLag,
    evaluate_criterion,
    f2_minlag_given_m1,
    generate_instance,
    johnson_order,
    least_schedule,
)

inst = Instance(
    p=[[2, 1], [1, 4], [1, 1]],
    lags=(
        TimeLag(job=0, from_op=0, to_op=1, min_lag=1),
        TimeLag(job=2, from_op=0, to_op=1, min_lag=5),
    ),
)

# Fix machine 1 to process jobs 0, 1, 2 and let the solver pick machine 2.
orders, sched = f2_minlag_given_m1(inst, m1_order=(0, 1, 2))
value = evaluate_criterion(inst, sched, Criterion.MAKESPAN)
print("machine-2 order:", orders.orders[1], "with makespan", value)
print("start times:")
print(sched.start)

# Exhaustive check: no machine-2 order does better for this machine-1 order.
best = min(
    evaluate_criterion(
        inst,
        least_schedule(inst, MachineOrders(((0, 1, 2), m2))),
        Criterion.MAKESPAN,
    )
    for m2 in itertools.permutations(range(inst.n))
)
assert best == value
print("exhaustive minimum over machine-2 orders:", best)

# Without lags the two-machine flowshop is solved outright by Johnson's
# rule; here it doubles as a sanity check on a random instance.
classic = generate_instance(GeneratorParams(n=6, m=2, lag_density=0.0, seed=7))
perm = johnson_order(classic)
timed = least_schedule(classic, MachineOrders.permutation(perm, 2))
print("Johnson order:", perm, "makespan:", evaluate_criterion(classic, timed, Criterion.MAKESPAN))
