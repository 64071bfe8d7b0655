"""
Tests for linearized polynomials
"""

import pytest
import sys
from pathlib import Path

import numpy as np

# Add project root to path
project_root = Path(__file__).parent.parent.parent
sys.path.insert(0, str(project_root))

from coding.errors import ParameterError, PreconditionError
from coding.ff import get_field
from coding.linpoly import (
    LinearizedPoly, lp_compose, lp_evaluate, lp_interpolate, lp_left_divide,
    lp_min_subspace_poly
)


@pytest.fixture
def field():
    return get_field(3, 5)


@pytest.fixture
def rng():
    return np.random.default_rng(7)


def random_poly(field, size, rng):
    return LinearizedPoly(field.ext, field.random(size, rng))


class TestEvaluation:
    def test_identity(self, field, rng):
        x = field.random(4, rng)
        assert np.array_equal(LinearizedPoly.identity(field.ext)(x), x)

    def test_zero_polynomial(self, field, rng):
        zero = LinearizedPoly(field.ext)
        assert zero.is_zero
        assert zero.q_degree is None
        assert not np.any(zero(field.random(3, rng)))

    def test_trailing_zeros_trimmed(self, field):
        f = LinearizedPoly(field.ext, field.ext([1, 2, 0, 0]))
        assert f.q_degree == 1

    def test_evaluation_is_fq_linear(self, field, rng):
        f = random_poly(field, 3, rng)
        x, y = field.random(2, rng)
        c = field.ext(2)
        assert lp_evaluate(f, x + y) == f(x) + f(y)
        assert lp_evaluate(f, c * x) == c * f(x)


class TestInterpolation:
    def test_interpolate_recovers_polynomial(self, field, rng):
        f = random_poly(field, 3, rng)
        points = field.basis_points(3)
        g = lp_interpolate(points, f(points))
        assert g == f

    def test_dependent_points_rejected(self, field):
        points = field.ext([1, 2])
        with pytest.raises(PreconditionError):
            lp_interpolate(points, field.ext([1, 1]))

    def test_length_mismatch(self, field):
        with pytest.raises(ParameterError):
            lp_interpolate(field.basis_points(2), field.ext([1]))


class TestSubspacePolynomial:
    def test_annihilates_span(self, field):
        basis = field.basis_points(2)
        f = lp_min_subspace_poly(basis)
        assert f.q_degree == 2
        assert f.leading == 1
        for a in range(3):
            for b in range(3):
                assert f(field.ext(a) * basis[0] + field.ext(b) * basis[1]) == 0

    def test_nonzero_outside_span(self, field):
        f = lp_min_subspace_poly(field.basis_points(2))
        assert f(field.x_power(3)) != 0


class TestComposition:
    def test_composition_evaluates_as_composition(self, field, rng):
        f = random_poly(field, 2, rng)
        g = random_poly(field, 3, rng)
        x = field.random(4, rng)
        assert np.array_equal(lp_compose(f, g)(x), f(g(x)))

    def test_left_division_is_exact_for_products(self, field, rng):
        v = random_poly(field, 3, rng)
        f = random_poly(field, 2, rng)
        quotient, remainder = lp_left_divide(lp_compose(v, f), v)
        assert remainder.is_zero
        assert quotient == f

    def test_left_division_remainder_degree(self, field, rng):
        h = random_poly(field, 4, rng)
        v = random_poly(field, 2, rng)
        quotient, remainder = lp_left_divide(h, v)
        assert remainder.is_zero or remainder.q_degree < v.q_degree
        assert lp_compose(v, quotient) + remainder == h

    def test_divide_by_zero_polynomial(self, field, rng):
        with pytest.raises(ParameterError):
            lp_left_divide(random_poly(field, 2, rng), LinearizedPoly(field.ext))
