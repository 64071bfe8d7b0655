"""
Tests for the concatenated Gabidulin / MDS array storage scheme
"""

import itertools

import pytest
import sys
from pathlib import Path

import numpy as np
from pydantic import ValidationError

# Add project root to path
project_root = Path(__file__).parent.parent.parent
sys.path.insert(0, str(project_root))

from coding.array_codes import ac_downloads, zigzag_5_3
from coding.concat import (
    capacity_table, collect, digits_per_byte, file_from_bytes, file_from_digits, file_to_bytes,
    naive_repair_capacity, naive_repair_decode, plan_naive_params, plan_params, random_file,
    resilience_capacity, store
)
from coding.errors import InfeasibleParametersError, ParameterError
from coding.ff import get_field
from coding.gabidulin import DecodeFailure, random_rank_error
from models.params import Scheme
from tests import TestConfig


@pytest.fixture(scope="module")
def zigzag():
    return zigzag_5_3()


@pytest.fixture(scope="module")
def params():
    return plan_params(TestConfig.ALPHA, TestConfig.K, TestConfig.T, TestConfig.N_NODES, TestConfig.D)


@pytest.fixture
def rng():
    return np.random.default_rng(42)


class TestPlanning:
    """Test suite for parameter planning and capacities"""

    def test_example_system(self, params):
        assert params.K == TestConfig.OUTER_K
        assert params.delta == TestConfig.DELTA
        assert params.m == params.N == 12
        assert params.beta == TestConfig.BETA
        assert params.repair_download == TestConfig.OPTIMAL_BANDWIDTH
        assert params.file_size == 48

    def test_no_adversary(self):
        params = plan_params(4, 3, 0, 5, 4)
        assert params.K == 12
        assert params.delta == 1

    def test_too_many_compromised(self):
        with pytest.raises(InfeasibleParametersError):
            plan_params(4, 3, 2, 5, 4)

    def test_beta_must_be_integral(self):
        with pytest.raises(ParameterError):
            plan_params(3, 3, 1, 5, 4)

    def test_params_model_rejects_short_distance(self, params):
        data = params.model_dump()
        data.update(K=5, delta=8)
        with pytest.raises(ValidationError):
            type(params)(**data)

    def test_resilience_capacity(self):
        assert resilience_capacity(4, 2, 3, 4, 1) == 4
        assert resilience_capacity(4, 2, 3, 4, 0) == 12

    def test_naive_capacity(self):
        assert naive_repair_capacity(4, 2, 3, 1) == 4
        assert naive_repair_capacity(4, 2, 3, 0) == 8

    def test_capacity_table(self):
        rows = capacity_table(4, 3, 5, 4)
        assert [row.t for row in rows] == [0, 1]
        assert all(row.attained for row in rows)
        assert rows[1].K == rows[1].capacity == 4

    def test_naive_params(self):
        params = plan_naive_params(4, 3, 1, 5, 4)
        assert params.scheme == Scheme.NAIVE
        assert params.K == 4
        assert params.required_distance() == 9

    def test_naive_over_bound(self):
        with pytest.raises(InfeasibleParametersError):
            plan_naive_params(4, 3, 1, 5, 4, ell=5)
        params = plan_naive_params(4, 3, 1, 5, 4, ell=5, enforce_bound=False)
        assert params.K == 5
        assert not params.enforce_bound


class TestFiles:
    def test_digits_per_byte(self):
        assert digits_per_byte(3) == 6
        assert digits_per_byte(17) == 2

    def test_byte_codec(self, params):
        data = b"rank metric storage"
        stripes = file_from_bytes(params, data)
        assert len(stripes) > 1
        assert file_to_bytes(params, stripes) == data

    def test_empty_bytes(self, params):
        stripes = file_from_bytes(params, b"")
        assert len(stripes) == 1
        assert file_to_bytes(params, stripes) == b""

    def test_digit_range_checked(self, params):
        with pytest.raises(ParameterError):
            file_from_digits(params, np.full(params.file_size, 3))

    def test_digit_count_checked(self, params):
        with pytest.raises(ParameterError):
            file_from_digits(params, np.zeros(params.file_size - 1, dtype=np.int64))


class TestCollect:
    """Test suite for data collection from k nodes"""

    def test_clean_collect_any_k(self, params, zigzag, rng):
        file = random_file(params, rng)
        nodes = store(params, file, zigzag)
        for subset in itertools.combinations(range(1, 6), 3):
            recovered = collect(params, zigzag, {j: nodes[j - 1] for j in subset})
            assert recovered == file

    def test_one_corrupted_node(self, params, zigzag, rng):
        field = get_field(params.q, params.N)
        file = random_file(params, rng)
        nodes = store(params, file, zigzag)
        nodes[3] = nodes[3] + random_rank_error(field, params.alpha, params.alpha, rng)
        assert collect(params, zigzag, {j: nodes[j - 1] for j in (2, 4, 5)}) == file
        assert collect(params, zigzag, {j: nodes[j - 1] for j in (1, 3, 4)}) == file

    def test_erased_node_directions(self, params, zigzag, rng):
        field = get_field(params.q, params.N)
        file = random_file(params, rng)
        nodes = store(params, file, zigzag)
        nodes[0] = field.zeros(params.alpha)
        recovered = collect(params, zigzag, {j: nodes[j - 1] for j in (1, 2, 4)}, erased_nodes=[1])
        assert recovered == file

    def test_two_corrupted_nodes_not_silent(self, params, zigzag, rng):
        field = get_field(params.q, params.N)
        file = random_file(params, rng)
        nodes = store(params, file, zigzag)
        for j in (0, 1):
            nodes[j] = nodes[j] + random_rank_error(field, params.alpha, params.alpha, rng)
        result = collect(params, zigzag, {j: nodes[j - 1] for j in (1, 2, 3)})
        assert isinstance(result, DecodeFailure) or result != file

    def test_wrong_node_count(self, params, zigzag, rng):
        nodes = store(params, random_file(params, rng), zigzag)
        with pytest.raises(ParameterError):
            collect(params, zigzag, {1: nodes[0], 2: nodes[1]})

    @pytest.mark.slow
    def test_single_corruption_random_subsets(self, params, zigzag):
        """200 random files, one node corrupted without repairs, one random collection set each"""
        rng = np.random.default_rng(2000)
        field = get_field(params.q, params.N)
        subsets = list(itertools.combinations(range(1, 6), 3))
        for _ in range(200):
            file = random_file(params, rng)
            nodes = store(params, file, zigzag)
            bad = int(rng.integers(0, 5))
            rank = int(rng.integers(1, params.alpha + 1))
            nodes[bad] = nodes[bad] + random_rank_error(field, params.alpha, rank, rng)
            subset = subsets[int(rng.integers(0, len(subsets)))]
            assert collect(params, zigzag, {j: nodes[j - 1] for j in subset}) == file


class TestNaiveRepairDecode:
    def test_decodes_from_repair_downloads(self, zigzag, rng):
        params = plan_naive_params(4, 3, 1, 5, 4)
        file = random_file(params, rng)
        nodes = store(params, file, zigzag)
        plan = zigzag.plan(2)
        contents = {j + 1: nodes[j] for j in range(5) if j != 1}
        result = naive_repair_decode(params, zigzag, plan, ac_downloads(zigzag, contents, plan))
        assert result == file

    def test_tolerates_one_corrupted_helper(self, zigzag, rng):
        params = plan_naive_params(4, 3, 1, 5, 4)
        field = get_field(params.q, params.N)
        file = random_file(params, rng)
        nodes = store(params, file, zigzag)
        nodes[0] = nodes[0] + random_rank_error(field, params.alpha, params.alpha, rng)
        plan = zigzag.plan(2)
        contents = {j + 1: nodes[j] for j in range(5) if j != 1}
        result = naive_repair_decode(params, zigzag, plan, ac_downloads(zigzag, contents, plan))
        assert result == file
