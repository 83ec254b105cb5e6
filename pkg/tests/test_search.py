import math
import random
from itertools import combinations

import pytest

from entropy_outliers import (
    COMPILED_AVAILABLE,
    Dataset,
    OutlierLabeling,
    SearchConfig,
    build_frequency_table,
    evaluate_swap,
    exact_solve,
    lsa,
)
from conftest import naive_objective, random_dataset


def seven_records():
    return Dataset.from_records([("a", "a")] * 6 + [("b", "b")])


def enumerate_optimum(dataset, k):
    """Independent brute force: try every subset with the naive objective."""
    best, best_subset = math.inf, None
    for subset in combinations(range(dataset.n), k):
        value = naive_objective(dataset, subset)
        if value < best:
            best, best_subset = value, subset
    return best, best_subset


def assert_local_optimum(dataset, result, epsilon=1e-12):
    labeling = OutlierLabeling.from_indices(dataset.n, result.outlier_indices)
    table = build_frequency_table(dataset, labeling)
    for t in range(dataset.n):
        if labeling.is_outlier(t):
            continue
        for o in result.outlier_indices:
            assert evaluate_swap(table, dataset, t, o).delta >= -epsilon


class TestLsaBasics:
    def test_k_zero_returns_full_entropy(self, rng):
        ds = random_dataset(rng, 10, 3, 3)
        result = lsa(ds, SearchConfig(k=0))
        assert result.outlier_indices == []
        assert result.swaps == 0
        assert result.objective == pytest.approx(naive_objective(ds), abs=1e-9)

    def test_k_equals_n(self, rng):
        ds = random_dataset(rng, 8, 2, 3)
        result = lsa(ds, SearchConfig(k=8))
        assert sorted(result.outlier_indices) == list(range(8))
        assert result.objective == 0.0

    def test_k_too_large(self, rng):
        with pytest.raises(ValueError):
            lsa(random_dataset(rng, 5, 2, 2), SearchConfig(k=6))

    def test_isolates_the_unique_record(self):
        result = lsa(seven_records(), SearchConfig(k=1))
        assert result.outlier_indices == [6]
        assert result.objective == 0.0

    def test_single_record_dataset(self):
        ds = Dataset.from_records([("a", "b")])
        assert lsa(ds, SearchConfig(k=0)).objective == 0.0
        assert lsa(ds, SearchConfig(k=1)).outlier_indices == [0]

    def test_deterministic_reruns(self, rng):
        ds = random_dataset(rng, 50, 4, 3)
        first = lsa(ds, SearchConfig(k=5))
        second = lsa(ds, SearchConfig(k=5))
        assert first.outlier_indices == second.outlier_indices
        assert first.objective == second.objective
        assert first.objective_trace == second.objective_trace

    def test_random_init_is_seeded(self, rng):
        ds = random_dataset(rng, 40, 3, 4)
        a = lsa(ds, SearchConfig(k=4, init="random", seed=11))
        b = lsa(ds, SearchConfig(k=4, init="random", seed=11))
        assert a.outlier_indices == b.outlier_indices

    def test_warm_start_override(self, rng):
        ds = random_dataset(rng, 12, 3, 2)
        result = lsa(ds, SearchConfig(k=2, initial_outliers=[7, 3]))
        assert len(result.outlier_indices) == 2

    def test_sweep_cap_reports_capped(self):
        result = lsa(seven_records(), SearchConfig(k=1, max_sweeps=1))
        assert result.capped and result.sweeps == 1 and result.swaps >= 1
        full = lsa(seven_records(), SearchConfig(k=1))
        assert not full.capped and full.sweeps == 2

    def test_config_validation(self):
        with pytest.raises(ValueError):
            SearchConfig(k=-1)
        with pytest.raises(ValueError):
            SearchConfig(k=1, init="sideways")
        with pytest.raises(ValueError):
            SearchConfig(k=1, epsilon=0.0)
        with pytest.raises(ValueError):
            SearchConfig(k=1, max_sweeps=0)
        with pytest.raises(ValueError):
            lsa(seven_records(), SearchConfig(k=2, initial_outliers=[1]))


class TestLsaAgainstOracle:
    def test_small_instances(self, rng):
        for trial in range(30):
            n = rng.randrange(6, 13)
            ds = random_dataset(rng, n, rng.randrange(2, 5), rng.randrange(2, 4))
            k = rng.randrange(1, 4)
            result = lsa(ds, SearchConfig(k=k))
            exact = exact_solve(ds, k)

            assert_local_optimum(ds, result)
            assert result.objective >= exact.objective - 1e-9
            # the incremental objective agrees with an independent recount
            assert result.objective == pytest.approx(
                naive_objective(ds, result.outlier_indices), abs=1e-9
            )
            # restarting at the true optimum moves nothing
            warm = lsa(ds, SearchConfig(k=k, initial_outliers=exact.outlier_indices))
            assert warm.swaps == 0
            assert warm.outlier_indices == sorted(exact.outlier_indices)


class TestFuzz:
    def test_descent_and_consistency(self, rng):
        for trial in range(25):
            n = rng.randrange(20, 300)
            ds = random_dataset(rng, n, rng.randrange(2, 8), rng.randrange(2, 6))
            k = rng.randrange(0, min(n, 15))
            config = SearchConfig(k=k, init=rng.choice(["first", "random"]), seed=trial)
            result = lsa(ds, config)
            assert not result.capped

            values = [result.initial_objective] + result.objective_trace
            for previous, current in zip(values, values[1:]):
                assert current < previous - config.epsilon
            assert len(result.objective_trace) == result.swaps
            if result.objective_trace:
                assert result.objective == result.objective_trace[-1]

            assert result.objective == pytest.approx(
                naive_objective(ds, result.outlier_indices), abs=1e-9
            )
            labeling = result.labeling
            assert labeling.outlier_indices() == result.outlier_indices
            rebuilt = build_frequency_table(ds, labeling)
            assert rebuilt.counts.sum(axis=1).tolist() == [n - k] * ds.m

    def test_terminates_within_generous_cap(self, rng):
        for _ in range(10):
            ds = random_dataset(rng, 120, 4, 3)
            result = lsa(ds, SearchConfig(k=10, max_sweeps=1000))
            assert not result.capped


@pytest.mark.skipif(not COMPILED_AVAILABLE, reason="compiled kernel not built")
class TestEnginesAgree:
    def test_swap_for_swap_parity(self, rng):
        for trial in range(15):
            n = rng.randrange(10, 200)
            ds = random_dataset(rng, n, rng.randrange(1, 7), rng.randrange(2, 6))
            k = rng.randrange(0, min(n, 12))
            fast = lsa(ds, SearchConfig(k=k, engine="compiled"))
            slow = lsa(ds, SearchConfig(k=k, engine="python"))
            assert fast.engine == "compiled" and slow.engine == "python"
            assert fast.outlier_indices == slow.outlier_indices
            assert (fast.sweeps, fast.swaps) == (slow.sweeps, slow.swaps)
            assert fast.objective_trace == slow.objective_trace
            assert fast.objective == slow.objective

    def test_duplicate_heavy_data(self, rng):
        # ties everywhere: both engines must break them identically
        rows = [("a", "b")] * 20 + [("b", "a")] * 20 + [("c", "c")] * 3
        rng.shuffle(rows)
        ds = Dataset.from_records(rows)
        fast = lsa(ds, SearchConfig(k=3, engine="compiled"))
        slow = lsa(ds, SearchConfig(k=3, engine="python"))
        assert fast.outlier_indices == slow.outlier_indices
        assert fast.objective == slow.objective


class TestExactSolve:
    def test_k_zero_single_candidate(self, rng):
        ds = random_dataset(rng, 6, 2, 2)
        result = exact_solve(ds, 0)
        assert result.outlier_indices == []
        assert result.objective == pytest.approx(naive_objective(ds), abs=1e-12)

    def test_unique_zero_entropy_solution(self):
        result = exact_solve(seven_records(), 1)
        assert result.outlier_indices == [6]
        assert result.objective == 0.0

    def test_matches_independent_enumeration(self, rng):
        for _ in range(10):
            ds = random_dataset(rng, 10, 3, 3)
            result = exact_solve(ds, 2)
            best, best_subset = enumerate_optimum(ds, 2)
            assert result.objective == pytest.approx(best, abs=1e-9)
            assert naive_objective(ds, result.outlier_indices) == pytest.approx(
                best, abs=1e-9
            )

    def test_lexicographic_tie_break(self):
        # both b-records are equally good lone outliers; the smaller index wins
        ds = Dataset.from_records([("a",), ("b",), ("a",), ("b",), ("a",)])
        assert exact_solve(ds, 1).outlier_indices == [1]

    def test_k_equals_n(self, rng):
        ds = random_dataset(rng, 5, 2, 2)
        result = exact_solve(ds, 5)
        assert result.objective == 0.0
        assert result.outlier_indices == list(range(5))

    def test_enumeration_cap(self, rng):
        ds = random_dataset(rng, 30, 2, 2)
        with pytest.raises(ValueError, match="cap"):
            exact_solve(ds, 10, max_candidates=1000)
