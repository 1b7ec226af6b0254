"""Restricted two-machine min-lag solver with a fixed machine-1 sequence."""

import itertools
import random

import pytest

from flowlag import (
    Criterion,
    GeneratorParams,
    Instance,
    MachineOrders,
    TimeLag,
    UNBOUNDED,
    evaluate_criterion,
    f2_minlag_given_m1,
    generate_instance,
    least_schedule,
    validate_schedule,
)


def minlag_instance(rng, n, with_release=False):
    params = GeneratorParams(
        n=n,
        m=2,
        p_range=(1, 9),
        lag_density=0.7,
        min_lag_range=(0, 8),
        pmax_unbounded=1.0,  # min lags only
        release_range=(0, 10) if with_release else None,
        seed=rng.getrandbits(32),
    )
    return generate_instance(params)


def exhaustive_best_m2(inst, m1_order):
    """Minimum makespan over every machine-2 order, timed by the graph engine."""
    best = None
    for m2 in itertools.permutations(range(inst.n)):
        sched = least_schedule(inst, MachineOrders((tuple(m1_order), m2)))
        value = evaluate_criterion(inst, sched, Criterion.MAKESPAN)
        best = value if best is None else min(best, value)
    return best


class TestWorkedExample:
    def test_three_job_instance(self):
        inst = Instance(
            p=[[2, 1], [1, 4], [1, 1]],
            lags=(
                TimeLag(0, 0, 1, min_lag=1),
                TimeLag(1, 0, 1, min_lag=0),
                TimeLag(2, 0, 1, min_lag=5),
            ),
        )
        orders, sched = f2_minlag_given_m1(inst, (0, 1, 2))
        C = sched.completions(inst)
        assert C[:, 0].tolist() == [2, 3, 4]
        assert orders.orders[1] == (0, 1, 2)  # availabilities 3, 3, 9
        assert C[:, 1].tolist() == [4, 8, 10]
        assert evaluate_criterion(inst, sched, Criterion.MAKESPAN) == 10
        assert exhaustive_best_m2(inst, (0, 1, 2)) == 10

    def test_single_job(self):
        inst = Instance(p=[[3, 2]], lags=(TimeLag(0, 0, 1, min_lag=4),))
        _, sched = f2_minlag_given_m1(inst, (0,))
        assert sched.start.tolist() == [[0, 7]]  # a = 3 + 4
        assert evaluate_criterion(inst, sched, Criterion.MAKESPAN) == 9

    def test_vacuous_machine_two(self):
        # zero-length second operations: makespan is the machine-1 sum
        rng = random.Random(41)
        for _ in range(10):
            n = rng.randint(1, 5)
            inst = Instance(p=[[rng.randint(1, 5), 0] for _ in range(n)])
            m1 = tuple(rng.sample(range(n), n))
            _, sched = f2_minlag_given_m1(inst, m1)
            total = int(inst.p[:, 0].sum())
            assert evaluate_criterion(inst, sched, Criterion.MAKESPAN) == total


class TestOptimality:
    def test_matches_exhaustive_machine_two_search(self):
        rng = random.Random(42)
        for _ in range(60):
            inst = minlag_instance(rng, rng.randint(1, 6))
            m1 = tuple(rng.sample(range(inst.n), inst.n))
            orders, sched = f2_minlag_given_m1(inst, m1)
            value = evaluate_criterion(inst, sched, Criterion.MAKESPAN)
            assert value == exhaustive_best_m2(inst, m1)
            assert validate_schedule(inst, orders, sched) == []

    def test_release_dates_are_respected(self):
        rng = random.Random(43)
        for _ in range(30):
            inst = minlag_instance(rng, rng.randint(1, 5), with_release=True)
            m1 = tuple(rng.sample(range(inst.n), inst.n))
            orders, sched = f2_minlag_given_m1(inst, m1)
            assert validate_schedule(inst, orders, sched) == []
            value = evaluate_criterion(inst, sched, Criterion.MAKESPAN)
            assert value == exhaustive_best_m2(inst, m1)

    def test_agrees_with_graph_timing_on_returned_orders(self):
        rng = random.Random(44)
        for _ in range(30):
            inst = minlag_instance(rng, rng.randint(1, 6))
            m1 = tuple(rng.sample(range(inst.n), inst.n))
            orders, sched = f2_minlag_given_m1(inst, m1)
            retimed = least_schedule(inst, orders)
            assert evaluate_criterion(
                inst, retimed, Criterion.MAKESPAN
            ) == evaluate_criterion(inst, sched, Criterion.MAKESPAN)


class TestPreconditions:
    def test_needs_two_machines(self):
        with pytest.raises(ValueError):
            f2_minlag_given_m1(Instance(p=[[1, 1, 1]]), (0,))

    def test_rejects_finite_max_lags(self):
        inst = Instance(p=[[1, 1]], lags=(TimeLag(0, 0, 1, 0, 5),))
        with pytest.raises(ValueError):
            f2_minlag_given_m1(inst, (0,))

    def test_unbounded_max_lags_are_fine(self):
        inst = Instance(p=[[1, 1]], lags=(TimeLag(0, 0, 1, 2, UNBOUNDED),))
        _, sched = f2_minlag_given_m1(inst, (0,))
        assert sched.start.tolist() == [[0, 3]]

    def test_rejects_non_permutation_m1(self):
        with pytest.raises(ValueError):
            f2_minlag_given_m1(Instance(p=[[1, 1], [1, 1]]), (0, 0))
