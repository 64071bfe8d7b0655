"""
Tests for repair plan search
"""

import pytest
import sys
from pathlib import Path

import galois
import numpy as np

# Add project root to path
project_root = Path(__file__).parent.parent.parent
sys.path.insert(0, str(project_root))

from coding.array_codes import ac_encode, ac_repair, zigzag_5_3
from coding.errors import ParameterError
from coding.ff import rank_over_base
from coding.repair_search import (
    ac_find_repair_plan, ac_trivial_plan, enumerate_subspaces, gaussian_binomial,
    structured_subspaces
)
from tests import TestConfig


@pytest.fixture(scope="module")
def zigzag():
    return zigzag_5_3()


class TestSubspaceCounting:
    @pytest.mark.parametrize("n,k,q,expected", [
        (4, 2, 3, 130),
        (3, 1, 2, 7),
        (4, 0, 3, 1),
        (4, 4, 3, 1),
        (2, 3, 3, 0),
    ])
    def test_gaussian_binomial(self, n, k, q, expected):
        assert gaussian_binomial(n, k, q) == expected

    def test_enumeration_matches_count(self):
        GF = galois.GF(3)
        subspaces = list(enumerate_subspaces(GF, 4, 2))
        assert len(subspaces) == gaussian_binomial(4, 2, 3)
        assert all(s.shape == (4, 2) for s in subspaces)
        assert all(np.linalg.matrix_rank(s) == 2 for s in subspaces)

    def test_enumeration_is_distinct(self):
        GF = galois.GF(3)
        seen = {tuple(s.T.row_reduce().flatten().tolist()) for s in enumerate_subspaces(GF, 4, 2)}
        assert len(seen) == 130

    def test_structured_candidates(self):
        GF = galois.GF(11)
        candidates = structured_subspaces(GF, 16, 8)
        assert len(candidates) == 4 * 4
        assert all(np.linalg.matrix_rank(c) == 8 for c in candidates)

    def test_structured_needs_half_power_of_two(self):
        assert structured_subspaces(galois.GF(3), 6, 3) == []
        assert structured_subspaces(galois.GF(3), 4, 1) == []


class TestTrivialPlan:
    def test_full_download_from_k_helpers(self, zigzag):
        plan = ac_trivial_plan(zigzag, 1)
        assert plan.helpers == (2, 3, 4)
        assert plan.bandwidth == TestConfig.TRIVIAL_BANDWIDTH
        assert plan.strategy == "trivial"

    def test_too_few_helpers(self, zigzag):
        with pytest.raises(ParameterError):
            ac_trivial_plan(zigzag, 1, [2, 3])

    def test_bad_node(self, zigzag):
        with pytest.raises(ParameterError):
            ac_trivial_plan(zigzag, 6)


class TestPlanSearch:
    """Test suite for optimal plan discovery on the Zigzag code"""

    def test_optimal_for_every_node(self, zigzag):
        for failed in range(1, 6):
            plan = ac_find_repair_plan(zigzag, failed)
            assert plan.helpers == tuple(j for j in range(1, 6) if j != failed)
            assert all(width == TestConfig.BETA for width in plan.downloads.values())

    def test_search_is_deterministic(self, zigzag):
        a = ac_find_repair_plan(zigzag, 3)
        b = ac_find_repair_plan(zigzag, 3)
        assert a.strategy == b.strategy
        for h in a.helpers:
            assert np.array_equal(a.download_matrices[h], b.download_matrices[h])
        assert np.array_equal(a.reconstruct, b.reconstruct)

    def test_reconstruct_shape(self, zigzag):
        plan = ac_find_repair_plan(zigzag, 2)
        assert plan.reconstruct.shape == (TestConfig.OPTIMAL_BANDWIDTH, TestConfig.ALPHA)
        slices = plan.payload_slices()
        assert [slices[h].stop - slices[h].start for h in plan.helpers] == [2, 2, 2, 2]

    def test_fewer_helpers_fall_back(self, zigzag):
        plan = ac_find_repair_plan(zigzag, 1, [2, 3, 4])
        assert plan.strategy == "trivial"
        assert plan.bandwidth == TestConfig.TRIVIAL_BANDWIDTH

    def test_failed_node_not_a_helper(self, zigzag):
        with pytest.raises(ParameterError):
            ac_find_repair_plan(zigzag, 1, [1, 2, 3, 4])

    def test_node_one_error_reaches_node_two_with_rank_two(self, zigzag):
        """Repairing node 2 maps node 1's content through V_1 R_1, a rank-beta map"""
        plan = ac_find_repair_plan(zigzag, 2)
        slices = plan.payload_slices()
        propagation = plan.download_matrices[1] @ plan.reconstruct[slices[1]]
        assert propagation.shape == (4, 4)
        assert np.linalg.matrix_rank(propagation) == TestConfig.BETA

    def test_plan_repairs_over_extension(self, zigzag):
        from coding.ff import get_field
        field = get_field(3, 6)
        rng = np.random.default_rng(5)
        y = ac_encode(zigzag, field.random((3, 4), rng))
        plan = ac_find_repair_plan(zigzag, 5)
        surviving = {j + 1: y[j] for j in range(4)}
        repaired = ac_repair(zigzag, surviving, plan)
        assert np.array_equal(repaired, y[4])
        assert rank_over_base(repaired - y[4]) == 0
