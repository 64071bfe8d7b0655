"""
Tests for the distributed storage simulator: repairs, taint bookkeeping,
the static rank invariant, naive and verified repair, and replay
"""

import itertools

import pytest
import sys
from pathlib import Path

import numpy as np

# Add project root to path
project_root = Path(__file__).parent.parent.parent
sys.path.insert(0, str(project_root))

from coding.array_codes import zigzag_5_3
from coding.concat import collect, plan_naive_params, plan_params, random_file, resilience_capacity
from coding.errors import InvariantViolation, ParameterError
from coding.ff import apply_base_map
from coding.gabidulin import DecodeFailure, random_rank_error
from models.scenario import AdversaryModel, AdversarySpec, DynamicPolicy
from simulator.dss import (
    aggregate_error_rank, assert_static_invariant, replay, sim_collect, sim_corrupt,
    sim_fail_repair, sim_init, sim_naive_repair, sim_snapshot, sim_verified_repair, sim_verify
)
from simulator.report import propagation_matrix
from tests import TestConfig


@pytest.fixture(scope="module")
def zigzag():
    return zigzag_5_3()


@pytest.fixture(scope="module")
def params():
    return plan_params(TestConfig.ALPHA, TestConfig.K, TestConfig.T, TestConfig.N_NODES, TestConfig.D)


@pytest.fixture(scope="module")
def naive_params():
    return plan_naive_params(TestConfig.ALPHA, TestConfig.K, TestConfig.T, TestConfig.N_NODES,
                             TestConfig.D)


def static_on(*nodes):
    return AdversarySpec(model=AdversaryModel.STATIC, compromised=list(nodes))


def dynamic_on(policy, *nodes):
    return AdversarySpec(model=AdversaryModel.DYNAMIC, compromised=list(nodes), policy=policy)


def start(params, code, adversary=None, seed=4):
    file = random_file(params, np.random.default_rng([seed, 1]))
    return sim_init(params, code, file, adversary, seed)


class TestInit:
    def test_clean_start(self, params, zigzag):
        state = start(params, zigzag)
        assert aggregate_error_rank(state) == 0
        assert [e.kind for e in state.event_log] == ["init"]
        assert all(j in state.registry for j in state.node_ids)

    def test_static_corruption_at_init(self, params, zigzag):
        state = start(params, zigzag, static_on(1))
        assert [e.kind for e in state.event_log] == ["init", "corrupt"]
        assert aggregate_error_rank(state) == TestConfig.ALPHA
        assert state.sources[0].kind == "static"

    def test_deferred_corruption(self, params, zigzag):
        spec = AdversarySpec(model=AdversaryModel.STATIC, compromised=[3], corrupt_at_init=False)
        state = start(params, zigzag, spec)
        assert aggregate_error_rank(state) == 0
        sim_corrupt(state, 3)
        assert aggregate_error_rank(state) == TestConfig.ALPHA
        with pytest.raises(ParameterError):
            sim_corrupt(state, 3)


class TestRepair:
    """Test suite for plain repair under a static adversary"""

    def test_clean_repair_is_exact(self, params, zigzag):
        state = start(params, zigzag)
        for failed in range(1, 6):
            sim_fail_repair(state, failed)
            assert np.array_equal(state.nodes[failed], state.truth[failed])
        assert state.event_log[-1].bandwidth == TestConfig.OPTIMAL_BANDWIDTH

    def test_node_one_error_propagation_matrix(self, params, zigzag):
        state = start(params, zigzag, static_on(1))
        sim_fail_repair(state, 2)
        B2 = propagation_matrix(state, 2, 1)
        assert B2.tolist() == TestConfig.EXAMPLE4_B2

    def test_taint_explains_every_error(self, params, zigzag):
        state = start(params, zigzag, static_on(1))
        for failed in (2, 3, 1, 4, 5, 2):
            sim_fail_repair(state, failed)
        for j in state.node_ids:
            explained = state.field.zeros(params.alpha)
            for source_id, T in state.taint[j].items():
                y = state.sources[source_id].vector
                explained = explained + apply_base_map(y, T)
            assert np.array_equal(explained, state.error_of(j))

    def test_collect_after_repair(self, params, zigzag):
        state = start(params, zigzag, static_on(1))
        sim_fail_repair(state, 2)
        assert sim_collect(state, [1, 2, 3]) == state.file
        assert state.event_log[-1].outcome == "success"

    def test_invariant_over_long_run(self, params, zigzag):
        state = start(params, zigzag, static_on(3), seed=11)
        rng = np.random.default_rng(3)
        for _ in range(30):
            sim_fail_repair(state, int(rng.integers(1, 6)))
            assert_static_invariant(state)
        assert state.max_aggregate_rank <= TestConfig.T * TestConfig.ALPHA

    @pytest.mark.slow
    def test_every_subset_collects_after_repair_histories(self, params, zigzag):
        """200 seeded histories: one static corruption, random repairs, then all k-subsets"""
        assert params.K == resilience_capacity(params.alpha, params.beta, params.k, params.d, params.t)
        subsets = list(itertools.combinations(range(1, 6), 3))
        assert len(subsets) == 10
        for seed in range(200):
            rng = np.random.default_rng([seed, 5])
            state = start(params, zigzag, static_on(int(rng.integers(1, 6))), seed=seed)
            for _ in range(int(rng.integers(1, 9))):
                sim_fail_repair(state, int(rng.integers(1, 6)))
                assert_static_invariant(state)
            for subset in subsets:
                result = collect(params, zigzag, {j: state.nodes[j] for j in subset})
                assert not isinstance(result, DecodeFailure), (seed, subset)
                assert np.array_equal(result.raw, state.file.raw), (seed, subset)

    def test_invariant_violation_raised(self, params, zigzag):
        state = start(params, zigzag, static_on(1))
        extra = random_rank_error(state.field, params.alpha, params.alpha, np.random.default_rng(9))
        state.nodes[4] = state.nodes[4] + extra
        with pytest.raises(InvariantViolation):
            assert_static_invariant(state)

    def test_failed_node_not_a_helper(self, params, zigzag):
        state = start(params, zigzag)
        with pytest.raises(ParameterError):
            sim_fail_repair(state, 1, [1, 2, 3, 4])

    def test_node_range(self, params, zigzag):
        state = start(params, zigzag)
        with pytest.raises(ParameterError):
            sim_fail_repair(state, 7)


class TestDynamicRepair:
    def test_rerandomize_spreads_errors(self, params, zigzag):
        state = start(params, zigzag, dynamic_on(DynamicPolicy.RERANDOMIZE, 1), seed=7)
        for failed in (2, 3, 4):
            sim_fail_repair(state, failed)
        assert aggregate_error_rank(state) > TestConfig.ALPHA
        assert any(s.kind == "transmission" for s in state.sources)
        # dynamic runs skip the static check
        assert_static_invariant(state)

    def test_unprotected_collect_fails(self, params, zigzag):
        state = start(params, zigzag, dynamic_on(DynamicPolicy.RERANDOMIZE, 1), seed=7)
        for failed in (2, 3, 4, 2, 3, 4):
            sim_fail_repair(state, failed)
        sim_collect(state, [2, 3, 4])
        assert state.event_log[-1].outcome == "failure"


class TestNaiveRepair:
    """Test suite for repair by full decode from the repair downloads"""

    def test_clean_naive_repair(self, naive_params, zigzag):
        state = start(naive_params, zigzag)
        sim_naive_repair(state, 3)
        assert state.event_log[-1].outcome == "success"
        assert np.array_equal(state.nodes[3], state.truth[3])

    @pytest.mark.slow
    def test_hundred_cycles_at_bound(self, naive_params, zigzag):
        state = start(naive_params, zigzag, dynamic_on(DynamicPolicy.RERANDOMIZE, 1), seed=31)
        rng = np.random.default_rng(100)
        for _ in range(100):
            sim_naive_repair(state, int(rng.integers(2, 6)))
            assert state.event_log[-1].outcome == "success"
        assert aggregate_error_rank(state) == 0
        assert sim_collect(state, [2, 3, 4]) == state.file

    def test_over_bound_fails(self, zigzag):
        params = plan_naive_params(4, 3, 1, 5, 4, ell=5, enforce_bound=False)
        state = start(params, zigzag, dynamic_on(DynamicPolicy.RERANDOMIZE, 1), seed=32)
        outcomes = []
        for _ in range(10):
            sim_naive_repair(state, 2)
            outcomes.append(state.event_log[-1].outcome)
        assert "failure" in outcomes


class TestVerifiedRepair:
    """Test suite for subspace-verified repair"""

    def test_honest_helpers_pass(self, params, zigzag):
        state = start(params, zigzag)
        sim_verified_repair(state, 1)
        record = state.event_log[-1]
        assert record.outcome == "ok"
        assert record.bandwidth == TestConfig.OPTIMAL_BANDWIDTH

    def test_off_subspace_detected_and_restored(self, params, zigzag):
        state = start(params, zigzag, dynamic_on(DynamicPolicy.OFF_SUBSPACE, 2), seed=22)
        sim_verified_repair(state, 1)
        record = state.event_log[-1]
        assert record.outcome == "detected"
        assert record.detail["failing"] == [2]
        assert record.detail["fallback_nodes"] == [3, 4]
        assert record.bandwidth == TestConfig.OPTIMAL_BANDWIDTH + 2 * (TestConfig.ALPHA - TestConfig.BETA)
        assert np.array_equal(state.nodes[1], state.truth[1])
        assert np.array_equal(state.nodes[2], state.truth[2])
        assert all(sim_verify(state).values())

    def test_in_subspace_errors_stay_within_alpha(self, params, zigzag):
        state = start(params, zigzag, dynamic_on(DynamicPolicy.IN_SUBSPACE, 2), seed=21)
        for failed in (1, 3, 4, 5):
            sim_verified_repair(state, failed)
            assert state.event_log[-1].outcome == "ok"
        assert aggregate_error_rank(state) <= TestConfig.ALPHA
        assert sim_collect(state, [1, 3, 4]) == state.file

    @pytest.mark.slow
    def test_in_subspace_hundred_trials(self, params, zigzag):
        subsets = list(itertools.combinations(range(1, 6), 3))
        rng = np.random.default_rng(210)
        for trial in range(100):
            state = start(params, zigzag, dynamic_on(DynamicPolicy.IN_SUBSPACE, 2), seed=1000 + trial)
            for _ in range(3):
                sim_verified_repair(state, int(rng.choice([1, 3, 4, 5])))
            subset = subsets[int(rng.integers(0, len(subsets)))]
            assert sim_collect(state, subset) == state.file

    @pytest.mark.slow
    def test_off_subspace_hundred_trials(self, params, zigzag):
        rng = np.random.default_rng(220)
        for trial in range(100):
            state = start(params, zigzag, dynamic_on(DynamicPolicy.OFF_SUBSPACE, 2), seed=2000 + trial)
            sim_verified_repair(state, int(rng.choice([1, 3, 4, 5])))
            assert state.event_log[-1].outcome == "detected"
            assert aggregate_error_rank(state) == 0


class TestReplay:
    def test_replay_reproduces_state(self, params, zigzag):
        state = start(params, zigzag, dynamic_on(DynamicPolicy.RERANDOMIZE, 1), seed=7)
        sim_fail_repair(state, 2)
        sim_snapshot(state)
        sim_fail_repair(state, 3)
        sim_collect(state, [2, 3, 4])
        sim_verify(state)
        again = replay(state)
        assert again.commands == state.commands
        assert [e.model_dump() for e in again.event_log] == [e.model_dump() for e in state.event_log]
        for j in state.node_ids:
            assert np.array_equal(again.nodes[j], state.nodes[j])

    def test_same_seed_same_run(self, params, zigzag):
        a = start(params, zigzag, static_on(1), seed=5)
        b = start(params, zigzag, static_on(1), seed=5)
        for state in (a, b):
            sim_fail_repair(state, 2)
        assert np.array_equal(a.nodes[2], b.nodes[2])
