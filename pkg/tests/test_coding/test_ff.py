"""
Tests for finite field arithmetic and F_q linear algebra
"""

import pytest
import sys
from pathlib import Path

import galois
import numpy as np

# Add project root to path
project_root = Path(__file__).parent.parent.parent
sys.path.insert(0, str(project_root))

from coding.errors import DivisionByZeroError, FieldMismatchError, ParameterError
from coding.ff import (
    ExtensionField, apply_base_map, collapse, column_space_basis, element_from_text,
    element_to_text, expand, ext_arith, ext_inverse, frobenius, get_field, in_column_space,
    irreducible_modulus, next_prime, nullspace, rank_over_base, solve_linear,
    vector_from_text, vector_to_text
)


@pytest.fixture
def field():
    return get_field(3, 4)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


class TestFieldConstruction:
    """Test suite for building F_{q^N}"""

    def test_modulus_is_monic_irreducible(self):
        coeffs = irreducible_modulus(3, 4)
        assert len(coeffs) == 5
        assert coeffs[-1] == 1
        poly = galois.Poly(coeffs, field=galois.GF(3), order='asc')
        assert poly.is_irreducible()

    def test_get_field_is_cached(self):
        assert get_field(3, 4) is get_field(3, 4)

    def test_params_record_modulus(self, field):
        assert field.q == 3
        assert field.N == 4
        assert field.params.modulus_poly == irreducible_modulus(3, 4)

    def test_degree_one_extension_is_base_field(self):
        field = ExtensionField(5, 1)
        assert field.ext is field.base

    def test_next_prime(self):
        assert next_prime(3) == 5
        assert next_prime(7) == 11

    def test_element_from_coefficients(self, field):
        a = field.element([1, 2])
        assert int(a) == 1 + 2 * 3

    def test_element_rejects_bad_digit(self, field):
        with pytest.raises(ParameterError):
            field.element([3])


class TestArithmetic:
    """Test suite for element operations"""

    def test_add_sub_mul(self, field, rng):
        a, b = field.random(2, rng)
        assert ext_arith(a, b, "add") == a + b
        assert ext_arith(a, b, "sub") == a - b
        assert ext_arith(a, b, "mul") == a * b

    def test_mixed_fields_rejected(self):
        a = get_field(3, 2).ext(1)
        b = get_field(3, 3).ext(1)
        with pytest.raises(FieldMismatchError):
            ext_arith(a, b, "add")

    def test_inverse(self, field, rng):
        a = field.random(1, rng)[0]
        while a == 0:
            a = field.random(1, rng)[0]
        assert a * ext_inverse(a) == 1

    def test_inverse_of_zero(self, field):
        with pytest.raises(DivisionByZeroError):
            ext_inverse(field.ext(0))

    def test_frobenius_is_power(self, field, rng):
        a = field.random(5, rng)
        assert np.array_equal(frobenius(a, 1), a ** 3)
        assert np.array_equal(frobenius(a, 2), a ** 9)

    def test_frobenius_period(self, field, rng):
        a = field.random(5, rng)
        assert np.array_equal(frobenius(a, field.N), a)


class TestBaseFieldViews:
    """Test suite for expand / collapse and rank over F_q"""

    def test_expand_collapse_inverse(self, field, rng):
        v = field.random(6, rng)
        M = expand(v)
        assert M.shape == (field.N, 6)
        assert np.array_equal(collapse(field.ext, M), v)

    def test_expand_little_endian(self, field):
        v = field.ext([1, 3])
        M = expand(v)
        assert list(M[:, 0]) == [1, 0, 0, 0]
        assert list(M[:, 1]) == [0, 1, 0, 0]

    def test_rank_of_basis_points(self, field):
        assert rank_over_base(field.basis_points(4)) == 4

    def test_rank_of_dependent_vector(self, field, rng):
        a = field.random(1, rng)[0]
        v = field.ext([a, a * 2, 0])
        assert rank_over_base(v) == (0 if a == 0 else 1)

    def test_apply_base_map_is_linear(self, field, rng):
        v = field.random(4, rng)
        Q = field.random_base((4, 3), rng)
        expected = field.ext.Zeros(3)
        for j in range(3):
            for i in range(4):
                expected[j] += v[i] * field.ext(int(Q[i, j]))
        assert np.array_equal(apply_base_map(v, Q), expected)


class TestLinearAlgebra:
    """Test suite for solving systems and column spaces"""

    def test_solve_consistent(self, rng):
        GF = galois.GF(5)
        A = GF.Random((4, 4), seed=rng)
        while np.linalg.matrix_rank(A) < 4:
            A = GF.Random((4, 4), seed=rng)
        x = GF.Random(4, seed=rng)
        result = solve_linear(A, A @ x)
        assert result.consistent
        assert result.rank == 4
        assert np.array_equal(result.solution, x)

    def test_solve_inconsistent(self):
        GF = galois.GF(3)
        A = GF([[1, 1], [1, 1]])
        result = solve_linear(A, GF([1, 2]))
        assert not result.consistent
        assert result.solution is None

    def test_nullspace(self):
        GF = galois.GF(3)
        A = GF([[1, 2, 0], [0, 0, 1]])
        basis = nullspace(A)
        assert basis.shape == (1, 3)
        assert not np.any(A @ basis.T)

    def test_column_space_membership(self):
        GF = galois.GF(3)
        M = GF([[1, 0], [0, 1], [1, 1]])
        basis = column_space_basis(M)
        assert basis.shape[1] == 2
        assert in_column_space(basis, GF([[2], [1], [0]]))
        assert not in_column_space(basis, GF([[1], [0], [0]]))


class TestSerialization:
    """Test suite for digit text"""

    def test_element_text(self, field):
        a = field.element([2, 0, 1])
        assert element_to_text(a) == "2.0.1.0"
        assert element_from_text(field.ext, "2.0.1.0") == a

    def test_vector_text(self, field, rng):
        v = field.random(3, rng)
        assert np.array_equal(vector_from_text(field.ext, vector_to_text(v)), v)

    def test_malformed_text(self, field):
        with pytest.raises(ParameterError):
            element_from_text(field.ext, "2.0.3.0")
        with pytest.raises(ParameterError):
            element_from_text(field.ext, "1.0")
