"""
Exact search over permutations: NEH start, machine-load bounds, pruning
=======================================================================

The branch-and-bound solver enumerates permutation prefixes depth first,
seeded with the NEH insertion heuristic and pruned by a per-machine load
bound. This script generates a random instance, watches the incumbent
improve, and cross-checks the result against plain brute force.
"""

from flowlag import (
    GeneratorParams,
    SearchOptions,
    brute_force_permutation,
    generate_instance,
    neh_insertion,
    solve_bnb,
)

params = GeneratorParams(
    n=8,
    m=4,
    p_range=(1, 20),
    lag_density=0.5,
    min_lag_range=(0, 10),
    max_lag_extra_range=(0, 10),
    pmax_unbounded=0.5,
    seed=42,
)
inst = generate_instance(params)
print(f"instance: {inst.n} jobs, {inst.m} machines, {len(inst.lags)} lags")

# The heuristic alone is often good but carries no proof.
perm, value = neh_insertion(inst)
print("NEH permutation:", perm, "with makespan", value)

# The exact search reports every incumbent improvement as it happens.
def report(value):
    print("  incumbent makespan:", value)

result = solve_bnb(inst, on_incumbent=report)
print("optimal permutation:", result.best_perm)
print("optimal makespan:", result.value)
print("nodes explored:", result.nodes_explored, "| root bound:", result.root_lower_bound)

# Brute force confirms it (8! = 40320 timings, still quick at this size).
bf_perm, bf_value = brute_force_permutation(inst)
assert bf_value == result.value
print("brute force agrees:", bf_value)

# Limits turn the solver into an anytime heuristic: it keeps the best
# schedule found and reports optimal=False instead of overrunning.
capped = solve_bnb(inst, SearchOptions(node_limit=5))
print(f"with a 5-node cap: value {capped.value}, proof: {capped.optimal}")
