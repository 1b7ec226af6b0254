"""NEH insertion and Johnson's rule against brute-force ground truth."""

import random

import pytest

from flowlag import (
    Criterion,
    InfeasibleError,
    Instance,
    MachineOrders,
    TimeLag,
    UNBOUNDED,
    evaluate_criterion,
    johnson_order,
    least_schedule,
    neh_insertion,
    validate_schedule,
)
from flowlag.exact import brute_force_permutation

from conftest import medium_instance


class TestNehInsertion:
    def test_single_job(self):
        inst = Instance(p=[[2, 3]], lags=(TimeLag(0, 0, 1, min_lag=1),))
        assert neh_insertion(inst) == ((0,), 6)

    def test_value_is_the_retimed_permutation_value(self):
        rng = random.Random(31)
        for _ in range(30):
            inst = medium_instance(rng, n_max=6, m_max=4)
            perm, value = neh_insertion(inst)
            sched = least_schedule(inst, MachineOrders.permutation(perm, inst.m))
            assert value == evaluate_criterion(inst, sched, Criterion.MAKESPAN)
            assert validate_schedule(
                inst, MachineOrders.permutation(perm, inst.m), sched
            ) == []

    def test_upper_bounds_the_permutation_optimum(self):
        rng = random.Random(32)
        gaps = []
        for _ in range(40):
            inst = medium_instance(rng, n_max=6, m_max=3)
            _, heuristic = neh_insertion(inst)
            _, optimum = brute_force_permutation(inst)
            assert heuristic >= optimum
            gaps.append(heuristic - optimum)
        assert min(gaps) == 0  # NEH hits the optimum on some instances

    def test_max_lateness_criterion(self):
        rng = random.Random(33)
        for _ in range(15):
            inst = medium_instance(rng, n_max=5, m_max=3, with_due=True)
            perm, value = neh_insertion(inst, Criterion.MAX_LATENESS)
            sched = least_schedule(inst, MachineOrders.permutation(perm, inst.m))
            assert value == evaluate_criterion(inst, sched, Criterion.MAX_LATENESS)
            _, optimum = brute_force_permutation(inst, Criterion.MAX_LATENESS)
            assert value >= optimum

    def test_infeasible_job_is_rejected_with_witness(self):
        inst = Instance(p=[[1, 1]], lags=(TimeLag(0, 0, 1, 3, 2),))
        with pytest.raises(InfeasibleError) as err:
            neh_insertion(inst)
        assert err.value.witness is not None


class TestJohnsonOrder:
    def test_textbook_pair(self):
        assert johnson_order(Instance(p=[[1, 9], [9, 1]])) == (0, 1)

    def test_symmetric_tie_breaks_by_index(self):
        inst = Instance(p=[[3, 3], [3, 3]])
        assert johnson_order(inst) == (0, 1)
        values = set()
        for perm in [(0, 1), (1, 0)]:
            sched = least_schedule(inst, MachineOrders.permutation(perm, 2))
            values.add(evaluate_criterion(inst, sched, Criterion.MAKESPAN))
        assert len(values) == 1  # any order is equally good here

    def test_worked_three_job_instance(self):
        inst = Instance(p=[[3, 2], [1, 4], [2, 2]])
        order = johnson_order(inst)
        assert order == (1, 0, 2)
        sched = least_schedule(inst, MachineOrders.permutation(order, 2))
        assert evaluate_criterion(inst, sched, Criterion.MAKESPAN) == 9

    def test_optimal_on_random_no_lag_f2(self):
        rng = random.Random(34)
        for _ in range(50):
            n = rng.randint(1, 7)
            inst = Instance(p=[[rng.randint(1, 9), rng.randint(1, 9)] for _ in range(n)])
            order = johnson_order(inst)
            sched = least_schedule(inst, MachineOrders.permutation(order, 2))
            value = evaluate_criterion(inst, sched, Criterion.MAKESPAN)
            assert value == brute_force_permutation(inst)[1]

    def test_vacuous_lags_are_permitted(self):
        inst = Instance(
            p=[[1, 2], [2, 1]], lags=(TimeLag(0, 0, 1, min_lag=0, max_lag=UNBOUNDED),)
        )
        assert johnson_order(inst) == (0, 1)

    @pytest.mark.parametrize(
        "inst",
        [
            Instance(p=[[1, 2, 3]]),
            Instance(p=[[1, 2]], lags=(TimeLag(0, 0, 1, min_lag=1),)),
            Instance(p=[[1, 2]], lags=(TimeLag(0, 0, 1, min_lag=0, max_lag=4),)),
        ],
    )
    def test_preconditions_enforced(self, inst):
        with pytest.raises(ValueError):
            johnson_order(inst)
