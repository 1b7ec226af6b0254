"""
Permutation schedules are not dominant under time lags
======================================================

In a classical flowshop it never hurts to process jobs in the same order
on every machine (for two machines, at least). With maximal time lags
that comfort disappears: letting machines disagree about the order can
strictly beat the best permutation schedule. This script searches random
two-machine instances until it finds such a gap and prints the witness.
"""

from flowlag import (
    Criterion,
    evaluate_criterion,
    find_nonperm_gap,
    least_schedule,
    serialize_instance,
)

# Draw small two-machine instances with tight, fully bounded lags and
# compare the best permutation schedule against the best schedule over
# all per-machine order combinations (both by brute force).
gap = find_nonperm_gap(seed=1, budget=10_000)
assert gap is not None, "no gap in this batch; raise the budget"

print("witness instance:")
print(serialize_instance(gap.instance))
print("best permutation makespan:  ", gap.permutation_value)
print("best general makespan:      ", gap.general_value)
print("machine orders achieving it:", gap.general_orders.orders)

# Re-time the certificate to see why it wins: the machines process the
# jobs in different orders, which no permutation schedule can imitate.
sched = least_schedule(gap.instance, gap.general_orders)
print("start times of the better schedule:")
print(sched.start)
assert evaluate_criterion(gap.instance, sched, Criterion.MAKESPAN) == gap.general_value

m1, m2 = gap.general_orders.orders
print("machine 0 order:", m1)
print("machine 1 order:", m2)
print("the orders differ:", m1 != m2)
