"""Acceptance gate: nine end-to-end checks of the public contracts.

Each test prints one verdict line (number, label, PASS/FAIL, elapsed) so the
whole gate can be read off a normal pytest run. Checks compare library output
against independent oracles (raw schedule enumeration, brute force over
permutations or over all machine-order tuples) at the largest sizes the
oracles can cover, always with exact integer equality.
"""

import itertools
import json
import random
import subprocess
import sys
import time
from pathlib import Path

import numpy as np

from conftest import (
    arbitrary_lags,
    criterion_values,
    exhaustive_feasible_starts,
    medium_instance,
    tiny_instance,
)
from flowlag import (
    Criterion,
    GeneratorParams,
    InfeasibleError,
    Instance,
    MachineOrders,
    SearchOptions,
    UNBOUNDED,
    brute_force_general,
    brute_force_permutation,
    embed_release_dates,
    evaluate_criterion,
    f2_minlag_given_m1,
    find_nonperm_gap,
    generate_instance,
    job_feasible,
    johnson_order,
    least_schedule,
    lmax_to_cmax,
    lower_bound,
    parse_instance,
    prefix_schedule,
    serialize_instance,
    solve_bnb,
)

FIXTURE = Path(__file__).parent / "fixtures" / "nonperm_gap.json"


def verdict(capsys, num, label, started, failures, limit=None):
    """Print the gate line for one criterion, then fail if anything broke."""
    elapsed = time.perf_counter() - started
    ok = not failures and (limit is None or elapsed < limit)
    with capsys.disabled():
        print(f"acceptance {num}/9 ({label}): {'PASS' if ok else 'FAIL'} [{elapsed:.1f}s]")
    if limit is not None:
        assert elapsed < limit, f"{label}: {elapsed:.1f}s exceeded the {limit}s budget"
    assert not failures, f"{label}: " + "; ".join(failures[:5])


def perm_cmax(inst, perm):
    sched = least_schedule(inst, MachineOrders.permutation(perm, inst.m))
    return evaluate_criterion(inst, sched, Criterion.MAKESPAN)


def test_1_fixed_sequence_optimality(capsys):
    """Least schedule = componentwise minimum = optimum for every criterion."""
    t0 = time.perf_counter()
    rng = random.Random(101)
    failures = []
    for trial in range(200):
        inst = tiny_instance(rng, with_due=True)
        perm = tuple(rng.sample(range(inst.n), inst.n))
        orders = MachineOrders.permutation(perm, inst.m)
        feasible = exhaustive_feasible_starts(inst, orders, horizon=12)
        try:
            sched = least_schedule(inst, orders)
        except InfeasibleError:
            if len(feasible):
                failures.append(f"trial {trial}: infeasible verdict but {len(feasible)} schedules exist")
            continue
        S = np.asarray(sched.start)
        if not len(feasible):
            failures.append(f"trial {trial}: enumeration found nothing yet timing succeeded")
            continue
        if not (feasible >= S).all():
            failures.append(f"trial {trial}: least schedule not componentwise minimal")
        if not (feasible == S).all(axis=(1, 2)).any():
            failures.append(f"trial {trial}: least schedule missing from the enumerated set")
        for crit in Criterion:
            want = int(criterion_values(inst, feasible, crit).min())
            got = evaluate_criterion(inst, sched, crit)
            if got != want:
                failures.append(f"trial {trial}: {crit.value} {got} != enumerated optimum {want}")
    verdict(capsys, 1, "fixed-sequence optimality", t0, failures, limit=60)


def test_2_branch_and_bound_exactness(capsys):
    """solve_bnb matches brute force over permutations, C_max and L_max."""
    t0 = time.perf_counter()
    rng = random.Random(202)
    failures = []
    for trial in range(500):
        inst = medium_instance(rng, n_max=7, m_max=4, with_due=True)
        for crit in (Criterion.MAKESPAN, Criterion.MAX_LATENESS):
            res = solve_bnb(inst, SearchOptions(criterion=crit))
            if not res.optimal:
                failures.append(f"trial {trial} {crit.value}: no optimality proof")
                continue
            _, want = brute_force_permutation(inst, crit)
            if res.value != want:
                failures.append(f"trial {trial} {crit.value}: bnb {res.value} != brute {want}")
            sched = least_schedule(inst, MachineOrders.permutation(res.best_perm, inst.m))
            if evaluate_criterion(inst, sched, crit) != res.value:
                failures.append(f"trial {trial} {crit.value}: reported permutation misses the value")
    verdict(capsys, 2, "branch-and-bound exactness", t0, failures, limit=600)


def test_3_lower_bound_admissibility(capsys):
    """No prefix bound ever exceeds the best completion of that prefix."""
    t0 = time.perf_counter()
    rng = random.Random(303)
    failures = []
    for trial in range(100):
        inst = medium_instance(rng, n_max=6, m_max=4)
        n = inst.n
        best_ext: dict[tuple[int, ...], int] = {}
        for perm in itertools.permutations(range(n)):
            value = perm_cmax(inst, perm)
            for k in range(n + 1):
                pre = perm[:k]
                if value < best_ext.get(pre, value + 1):
                    best_ext[pre] = value
        for pre, best in best_ext.items():
            remaining = [i for i in range(n) if i not in pre]
            psched = prefix_schedule(inst, pre) if pre else None
            bound = lower_bound(inst, pre, psched, remaining)
            if bound > best:
                failures.append(f"trial {trial} prefix {pre}: bound {bound} > best extension {best}")
    verdict(capsys, 3, "lower-bound admissibility", t0, failures)


def test_4_transform_equivalences(capsys):
    """Dummy-machine embeddings preserve objectives, permutation by permutation."""
    t0 = time.perf_counter()
    rng = random.Random(404)
    failures = []
    for trial in range(100):
        inst = medium_instance(rng, n_max=5, m_max=3, with_release=True, with_due=True)
        emb = embed_release_dates(inst)
        red = lmax_to_cmax(inst)
        for perm in itertools.permutations(range(inst.n)):
            direct = least_schedule(inst, MachineOrders.permutation(perm, inst.m))
            cmax = evaluate_criterion(inst, direct, Criterion.MAKESPAN)
            via = least_schedule(emb.inst, MachineOrders.permutation(perm, emb.inst.m))
            if evaluate_criterion(emb.inst, via, Criterion.MAKESPAN) != cmax:
                failures.append(f"trial {trial} perm {perm}: release embedding changed C_max")
            lmax = evaluate_criterion(inst, direct, Criterion.MAX_LATENESS)
            tailed = least_schedule(red.inst, MachineOrders.permutation(perm, red.inst.m))
            got = evaluate_criterion(red.inst, tailed, Criterion.MAKESPAN) - red.offset
            if got != lmax:
                failures.append(f"trial {trial} perm {perm}: lateness reduction {got} != {lmax}")
    verdict(capsys, 4, "transform equivalences", t0, failures)


def test_5_nonpermutation_gap(capsys):
    """The search finds a certified gap and the frozen fixture still has one."""
    t0 = time.perf_counter()
    failures = []
    gap = find_nonperm_gap(seed=1, budget=10_000)
    if gap is None:
        failures.append("no gap instance found within the budget")
    else:
        inst = gap.instance
        if inst.n > 4 or inst.m != 2 or any(l.max_lag is UNBOUNDED for l in inst.lags):
            failures.append("gap instance outside the two-machine finite-lag family")
        _, perm_best = brute_force_permutation(inst)
        orders_best, general_best = brute_force_general(inst)
        if perm_best != gap.permutation_value or general_best != gap.general_value:
            failures.append("reported gap values disagree with brute force")
        if not general_best < perm_best:
            failures.append(f"gap is not strict: {general_best} vs {perm_best}")
        timed = least_schedule(inst, gap.general_orders)
        if evaluate_criterion(inst, timed, Criterion.MAKESPAN) != gap.general_value:
            failures.append("certificate orders do not achieve the general value")

    fixture = parse_instance(FIXTURE.read_text(encoding="utf-8"))
    _, perm_best = brute_force_permutation(fixture)
    _, general_best = brute_force_general(fixture)
    if not general_best < perm_best:
        failures.append(f"fixture gap vanished: {general_best} vs {perm_best}")
    verdict(capsys, 5, "non-permutation gap", t0, failures, limit=300)


def test_6_two_machine_restricted_solver(capsys):
    """Fixed machine-1 order: the greedy machine-2 order is exactly optimal."""
    t0 = time.perf_counter()
    rng = random.Random(606)
    failures = []
    for trial in range(200):
        n = rng.randint(1, 7)
        inst = generate_instance(
            GeneratorParams(
                n=n,
                m=2,
                p_range=(1, 9),
                lag_density=0.7,
                min_lag_range=(0, 6),
                pmax_unbounded=1.0,
                release_range=(0, 5) if rng.random() < 0.3 else None,
                seed=rng.getrandbits(32),
            )
        )
        m1 = list(range(n))
        rng.shuffle(m1)
        orders, sched = f2_minlag_given_m1(inst, m1)
        got = evaluate_criterion(inst, sched, Criterion.MAKESPAN)
        best = min(
            evaluate_criterion(
                inst,
                least_schedule(inst, MachineOrders((tuple(m1), m2))),
                Criterion.MAKESPAN,
            )
            for m2 in itertools.permutations(range(n))
        )
        if got != best:
            failures.append(f"trial {trial}: solver {got} != exhaustive machine-2 optimum {best}")
        if orders.orders[0] != tuple(m1):
            failures.append(f"trial {trial}: machine-1 order was not preserved")
    verdict(capsys, 6, "two-machine restricted solver", t0, failures, limit=120)


def test_7_feasibility_independence(capsys):
    """Feasibility is a per-job property, identical under every permutation."""
    t0 = time.perf_counter()
    rng = random.Random(707)
    failures = []
    seen = {True: 0, False: 0}
    for trial in range(200):
        if trial % 2:
            inst = medium_instance(rng, n_max=5, m_max=4)
        else:
            n, m = rng.randint(1, 5), rng.randint(2, 4)
            p = [[rng.randint(0, 6) for _ in range(m)] for _ in range(n)]
            inst = Instance(p=p, lags=arbitrary_lags(rng, n, m))
        expected = all(job_feasible(inst, i) for i in range(inst.n))
        seen[expected] += 1
        for _ in range(5):
            perm = tuple(rng.sample(range(inst.n), inst.n))
            try:
                least_schedule(inst, MachineOrders.permutation(perm, inst.m))
                got = True
            except InfeasibleError:
                got = False
            if got != expected:
                failures.append(f"trial {trial} perm {perm}: verdict {got}, job check says {expected}")
    if not (seen[True] and seen[False]):
        failures.append(f"coverage hole: verdict counts {seen}")
    verdict(capsys, 7, "feasibility independence", t0, failures)


def test_8_classical_two_machine_regression(capsys):
    """Without lags, branch and bound, Johnson's rule, and brute force agree."""
    t0 = time.perf_counter()
    rng = random.Random(808)
    failures = []
    for trial in range(100):
        n = rng.randint(2, 7)
        inst = generate_instance(
            GeneratorParams(n=n, m=2, p_range=(1, 9), lag_density=0.0, seed=rng.getrandbits(32))
        )
        bnb = solve_bnb(inst)
        johnson = perm_cmax(inst, johnson_order(inst))
        _, brute = brute_force_permutation(inst)
        if not (bnb.optimal and bnb.value == johnson == brute):
            failures.append(
                f"trial {trial}: bnb {bnb.value} johnson {johnson} brute {brute}"
            )
    verdict(capsys, 8, "classical two-machine regression", t0, failures)


def test_9_cli_determinism(capsys, tmp_path):
    """Serial solves are byte-identical; parallel solves match the objective."""
    t0 = time.perf_counter()
    failures = []
    inst = generate_instance(
        GeneratorParams(n=6, m=3, lag_density=0.5, pmax_unbounded=0.5, seed=99)
    )
    path = tmp_path / "instance.json"
    path.write_text(serialize_instance(inst), encoding="utf-8")
    base = [sys.executable, "-m", "flowlag", "solve", str(path), "--method", "bnb", "--seed", "7"]

    runs = [
        subprocess.run(base + ["--workers", "1"], capture_output=True, timeout=120)
        for _ in range(3)
    ]
    if any(r.returncode != 0 for r in runs):
        failures.append(f"serial solve failed: {runs[0].stderr.decode(errors='replace')}")
    elif not (runs[0].stdout == runs[1].stdout == runs[2].stdout):
        failures.append("serial runs are not byte-identical")

    parallel = subprocess.run(base + ["--workers", "4"], capture_output=True, timeout=120)
    if parallel.returncode != 0:
        failures.append(f"parallel solve failed: {parallel.stderr.decode(errors='replace')}")
    elif not failures:
        serial_value = json.loads(runs[0].stdout)["value"]
        parallel_value = json.loads(parallel.stdout)["value"]
        if serial_value != parallel_value:
            failures.append(f"objective changed under workers=4: {parallel_value} != {serial_value}")
    verdict(capsys, 9, "CLI determinism", t0, failures)
