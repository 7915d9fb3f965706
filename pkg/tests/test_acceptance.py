"""Acceptance suite: one test per criterion, one printed line per criterion.

Run with `pytest tests/test_acceptance.py -v -s` to see the lines even on
success.  Shared sweeps are module-scoped fixtures so criteria that examine
the same population reuse one run.
"""

import itertools
import random
import time
from contextlib import contextmanager

import pytest

from setsep import (
    ConstantsInfeasibleError,
    SetSystem,
    ThreeDPMInstance,
    assign_deterministic,
    assignment_steps,
    check_equivalence,
    disjoint_pair_union_family,
    forbidden_set,
    interval_family,
    project,
    reduce_3dpm_to_binfilling,
    separation_trial_rate,
    tree_path_family,
    verify_separated,
)
from conftest import random_set_system, random_tree

SWEEP_SEED = 20260809


@contextmanager
def criterion(number, summary):
    try:
        yield
    except BaseException:
        print(f"ACCEPTANCE {number}: FAIL - {summary}")
        raise
    print(f"ACCEPTANCE {number}: PASS - {summary}")


@pytest.fixture(scope="module")
def greedy_sweep():
    """1,000 random systems (n <= 12, |F| <= 200), assigned and verified."""
    rng = random.Random(SWEEP_SEED)
    results = []
    start = time.perf_counter()
    for _ in range(1000):
        system = random_set_system(rng, max_n=12, max_family=200)
        weights, report = assign_deterministic(system)
        oracle = verify_separated(system, weights)
        results.append((system, weights, report, oracle))
    elapsed = time.perf_counter() - start
    return results, elapsed


@pytest.fixture(scope="module")
def reduction_instances():
    """Criterion 8 population: exhaustive n <= 2 plus 200 random n = 3."""
    instances = []
    for n in (1, 2):
        pool = list(itertools.product(range(n), repeat=3))
        for r in range(len(pool) + 1):
            for combo in itertools.combinations(pool, r):
                instances.append(ThreeDPMInstance(n, combo))
    rng = random.Random(4242)
    pool3 = list(itertools.product(range(3), repeat=3))
    for i in range(200):
        if i % 2 == 0:
            triples = tuple(sorted(rng.sample(pool3, rng.randint(0, 7))))
        else:
            # plant a perfect matching, then add noise triples
            sigma = rng.sample(range(3), 3)
            tau = rng.sample(range(3), 3)
            planted = {(i_x, sigma[i_x], tau[i_x]) for i_x in range(3)}
            noise = [t for t in pool3 if t not in planted]
            extra = rng.sample(noise, rng.randint(0, 4))
            triples = tuple(sorted(planted | set(extra)))
        instances.append(ThreeDPMInstance(3, triples))
    return instances


def test_criterion_01_greedy_correctness_sweep(greedy_sweep):
    results, elapsed = greedy_sweep
    with criterion(1, f"1000-instance sweep separated, {elapsed:.2f}s"):
        assert len(results) == 1000
        assert all(oracle.separated for _, _, _, oracle in results)
        assert elapsed < 30.0, f"sweep took {elapsed:.2f}s"


def test_criterion_02_bound_conformance(greedy_sweep):
    results, _ = greedy_sweep
    with criterion(2, "max weight within both range bounds on the sweep"):
        for system, _, report, _ in results:
            assert report.max_weight <= report.bound_thm2
            gamma = system.max_member_size
            corrected = (gamma * len(system.family) + 1) ** 2
            assert report.max_weight <= corrected


def test_criterion_03_base_case_and_greedy_rule(greedy_sweep):
    results, _ = greedy_sweep
    with criterion(3, "w(x1)=1 on the sweep; step minimality on 150 instances"):
        for system, weights, _, _ in results:
            if system.family:
                assert weights.weights[0] == 1
        rng = random.Random(31415)
        for _ in range(150):
            system = random_set_system(rng, max_n=7, max_family=24)
            weights, _ = assign_deterministic(system)
            for step, chosen, _ in assignment_steps(system):
                g = forbidden_set(project(system, step), weights.weights[:step])
                assert chosen not in g.values
                for below in range(1, chosen):
                    assert below in g.values


def test_criterion_04_powerset_oracle():
    with criterion(4, "full powerset gives powers of two for k = 1..12"):
        for k in range(1, 13):
            family = [c for r in range(k + 1) for c in itertools.combinations(range(k), r)]
            system = SetSystem([f"x{i}" for i in range(k)], family)
            weights, _ = assign_deterministic(system)
            assert weights.weights == tuple(2 ** i for i in range(k))


def test_criterion_05_intervals():
    with criterion(5, "intervals n = 1..50: distinct, max weight <= n^4"):
        for n in range(1, 51):
            system = interval_family(n)
            assert len(system.family) == n * (n + 1) // 2
            weights, report = assign_deterministic(system)
            assert verify_separated(system, weights).separated
            assert report.max_weight <= n ** 4
            if n == 3:
                assert weights.weights == (1, 2, 4)


def test_criterion_06_disjoint_pair_unions():
    with criterion(6, "interval-pair unions n = 2..15: distinct, max weight <= n^8"):
        for n in range(2, 16):
            for include_singles in (False, True):
                system = disjoint_pair_union_family(n, include_singles=include_singles)
                weights, report = assign_deterministic(system)
                assert verify_separated(system, weights).separated
                assert report.max_weight <= n ** 8


def test_criterion_07_tree_paths():
    with criterion(7, "200 random trees n <= 40: distinct paths, max weight <= n^6"):
        rng = random.Random(777)
        for _ in range(200):
            n = rng.randint(2, 40)
            tree = random_tree(rng, n)
            system = tree_path_family(tree)
            assert len(system.family) == n * (n - 1) // 2
            weights, report = assign_deterministic(system)
            assert verify_separated(system, weights).separated
            assert report.max_weight <= n ** 6


def test_criterion_08_reduction_iff(reduction_instances):
    with criterion(8, f"{len(reduction_instances)} instances: both oracles agree end to end"):
        feasible = 0
        for inst in reduction_instances:
            report = check_equivalence(inst, capacity_mode="safe")
            assert report.dpm_feasible == report.binfill_feasible
            assert report.structure_ok
            if report.dpm_feasible:
                feasible += 1
                assert len(report.details) == inst.n
                for summary in report.details:
                    assert len(summary.small_elements) == 3
        # the population must exercise both outcomes
        assert 0 < feasible < len(reduction_instances)


def test_criterion_09_paper_mode_constants(reduction_instances):
    with criterion(9, "paper-mode capacity: valid instance or loud failure; n=1 fails"):
        with pytest.raises(ConstantsInfeasibleError):
            reduce_3dpm_to_binfilling(ThreeDPMInstance(1, ((0, 0, 0),)), "paper")
        for inst in reduction_instances:
            try:
                reduced = reduce_3dpm_to_binfilling(inst, "paper")
            except ConstantsInfeasibleError:
                assert inst.n == 1
            else:
                assert reduced.capacity == inst.n ** 10
                assert sum(reduced.small_items) < reduced.capacity
                for item in reduced.large_items:
                    assert 2 * item.weight > reduced.capacity
            # safe mode must always construct
            safe = reduce_3dpm_to_binfilling(inst, "safe")
            assert sum(safe.small_items) < safe.capacity


def test_criterion_10_randomized_baseline():
    with criterion(10, "randomized rate >= 0.45 at M = 2|F|^2; forced collisions at M = 1"):
        rng = random.Random(909)
        built = 0
        while built < 20:
            n = rng.randint(1, 8)
            fam_size = rng.randint(1, 20)
            family = [rng.sample(range(n), rng.randint(0, n)) for _ in range(fam_size)]
            system = SetSystem([f"x{j}" for j in range(n)], family)
            if not system.family:
                continue
            built += 1
            m_range = 2 * len(system.family) ** 2
            rate = separation_trial_rate(system, m_range, 400, seed=built)
            assert rate >= 0.45, (built, rate)
        for family in ([[0], [1]], [[0, 1], [1, 2]]):
            system = SetSystem(["x1", "x2", "x3"], family)
            assert separation_trial_rate(system, 1, 100, seed=5) == 0.0
