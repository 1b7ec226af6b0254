"""Flowshop scheduling with minimal and maximal time lags.

Timing a fixed set of machine orders is polynomial: the start times are the
longest paths in a difference-constraint graph, and a positive cycle is a
certificate of infeasibility. On top of that sit exact search over
permutations, brute-force oracles over arbitrary per-machine orders,
lag-aware heuristics, dummy-machine reductions for release dates and
maximum lateness, and a restricted two-machine polynomial solver.
"""

from .exact import (
    AllInfeasibleError,
    BnBResult,
    CapExceededError,
    GapResult,
    SearchOptions,
    brute_force_general,
    brute_force_permutation,
    find_nonperm_gap,
    lower_bound,
    solve_bnb,
)
from .gantt import render_gantt
from .generate import GeneratorParams, generate_instance
from .heuristics import johnson_order, neh_insertion
from .io import (
    FormatError,
    parse_instance,
    parse_schedule,
    serialize_instance,
    serialize_schedule,
)
from .model import (
    UNBOUNDED,
    Criterion,
    Instance,
    InvalidInstanceError,
    InvalidScheduleError,
    MachineOrders,
    MissingDueDatesError,
    MissingReleaseDatesError,
    Schedule,
    SchedulingError,
    TimeLag,
    evaluate_criterion,
    orders_from_schedule,
    validate_instance,
    validate_schedule,
)
from .timing import (
    ConstraintGraph,
    CycleWitness,
    InfeasibleError,
    build_constraint_graph,
    internal_tail,
    job_cycle_witness,
    job_feasible,
    least_schedule,
    prefix_schedule,
)
from .transforms import (
    TransformKind,
    TransformedInstance,
    embed_release_dates,
    embed_tails,
    lmax_to_cmax,
    project_schedule,
)
from .twomachine import f2_minlag_given_m1

__version__ = "0.1.0"

__all__ = [
    "AllInfeasibleError",
    "BnBResult",
    "CapExceededError",
    "ConstraintGraph",
    "Criterion",
    "CycleWitness",
    "FormatError",
    "GapResult",
    "GeneratorParams",
    "InfeasibleError",
    "Instance",
    "InvalidInstanceError",
    "InvalidScheduleError",
    "MachineOrders",
    "MissingDueDatesError",
    "MissingReleaseDatesError",
    "Schedule",
    "SchedulingError",
    "SearchOptions",
    "TimeLag",
    "TransformKind",
    "TransformedInstance",
    "UNBOUNDED",
    "brute_force_general",
    "brute_force_permutation",
    "build_constraint_graph",
    "embed_release_dates",
    "embed_tails",
    "evaluate_criterion",
    "f2_minlag_given_m1",
    "find_nonperm_gap",
    "generate_instance",
    "internal_tail",
    "job_cycle_witness",
    "job_feasible",
    "johnson_order",
    "least_schedule",
    "lmax_to_cmax",
    "lower_bound",
    "neh_insertion",
    "orders_from_schedule",
    "parse_instance",
    "parse_schedule",
    "prefix_schedule",
    "project_schedule",
    "render_gantt",
    "serialize_instance",
    "serialize_schedule",
    "solve_bnb",
    "validate_instance",
    "validate_schedule",
]
