"""
Linearized polynomials

f(x) = sum_i a_i x^{q^i} over F_{q^N}. Evaluation is F_q-linear, composition is
the (non-commutative) product, and interpolation on F_q-independent points goes
through the Moore matrix.
"""

import logging

import numpy as np

from .errors import FieldMismatchError, ParameterError, PreconditionError
from .ff import field_of, frobenius, frobenius_powers, require_independent, solve_linear

logger = logging.getLogger(__name__)


class LinearizedPoly:
    """Coefficients a_0..a_d of sum a_i x^{q^i}; the zero polynomial has none"""

    def __init__(self, GF, coeffs=()):
        self.GF = GF
        coeffs = GF(coeffs) if not isinstance(coeffs, GF) else coeffs.copy()
        coeffs = np.atleast_1d(coeffs)
        nonzero = np.flatnonzero(coeffs != 0)
        self.coeffs = coeffs[: nonzero[-1] + 1] if nonzero.size else GF.Zeros(0)

    @classmethod
    def identity(cls, GF):
        return cls(GF, GF([1]))

    @classmethod
    def monomial(cls, GF, coeff, i: int):
        coeffs = GF.Zeros(i + 1)
        coeffs[i] = coeff
        return cls(GF, coeffs)

    @property
    def is_zero(self) -> bool:
        return self.coeffs.size == 0

    @property
    def q_degree(self):
        """Index of the top nonzero coefficient, None for the zero polynomial"""
        return None if self.is_zero else self.coeffs.size - 1

    @property
    def leading(self):
        return self.coeffs[-1] if not self.is_zero else self.GF(0)

    def coefficient(self, i: int):
        return self.coeffs[i] if i < self.coeffs.size else self.GF(0)

    def padded(self, length: int):
        """Coefficient vector padded with zeros to the given length"""
        if self.coeffs.size > length:
            raise ParameterError(f"q-degree {self.q_degree} does not fit in {length} coefficients")
        out = self.GF.Zeros(length)
        out[: self.coeffs.size] = self.coeffs
        return out

    def _check(self, other):
        if other.GF is not self.GF:
            raise FieldMismatchError("linearized polynomials over different fields")

    def __add__(self, other):
        self._check(other)
        size = max(self.coeffs.size, other.coeffs.size)
        return LinearizedPoly(self.GF, self.padded(size) + other.padded(size))

    def __sub__(self, other):
        self._check(other)
        size = max(self.coeffs.size, other.coeffs.size)
        return LinearizedPoly(self.GF, self.padded(size) - other.padded(size))

    def scale(self, c):
        """c * f(x)"""
        return LinearizedPoly(self.GF, self.coeffs * c)

    def frobenius_shift(self):
        """f(x)^q"""
        if self.is_zero:
            return self
        return LinearizedPoly(self.GF, np.concatenate((self.GF.Zeros(1), frobenius(self.coeffs, 1))))

    def __call__(self, x):
        return lp_evaluate(self, x)

    def __eq__(self, other):
        if not isinstance(other, LinearizedPoly):
            return NotImplemented
        return (other.GF is self.GF and self.coeffs.size == other.coeffs.size
                and bool(np.all(self.coeffs == other.coeffs)))

    def __repr__(self):
        if self.is_zero:
            return "LinearizedPoly(0)"
        terms = [f"{int(a)}*x^[{i}]" for i, a in enumerate(self.coeffs) if a != 0]
        return f"LinearizedPoly({' + '.join(terms)})"


def lp_evaluate(f: LinearizedPoly, x):
    """sum_i a_i x^{q^i}, elementwise for arrays"""
    if field_of(x) is not f.GF:
        raise FieldMismatchError("point and polynomial belong to different fields")
    result = f.GF.Zeros(np.shape(x))
    for i, a in enumerate(f.coeffs):
        if a != 0:
            result = result + a * frobenius(x, i)
    return result


def lp_interpolate(points, values) -> LinearizedPoly:
    """
    Unique f of q-degree < len(points) with f(g_i) = y_i.

    Raises PreconditionError when the points are F_q-dependent.
    """
    points = np.atleast_1d(points)
    values = np.atleast_1d(values)
    if points.size != values.size:
        raise ParameterError(f"{points.size} points but {values.size} values")
    GF = field_of(points)
    if points.size == 0:
        return LinearizedPoly(GF)
    require_independent(points, "interpolation points")

    moore = frobenius_powers(points, points.size).T
    result = solve_linear(moore, values)
    if not result.consistent or result.rank != points.size:
        # Unreachable for independent points: the Moore matrix is then invertible.
        raise PreconditionError("Moore matrix is singular")
    return LinearizedPoly(GF, result.solution)


def lp_min_subspace_poly(basis) -> LinearizedPoly:
    """Monic annihilator of span_Fq(basis), q-degree len(basis)"""
    basis = np.atleast_1d(basis)
    GF = field_of(basis)
    f = LinearizedPoly.identity(GF)
    for b in basis:
        fb = f(b)
        if fb == 0:
            raise PreconditionError("subspace basis is not F_q-linearly independent")
        f = f.frobenius_shift() - f.scale(fb ** (GF.characteristic - 1))
    return f


def lp_compose(f: LinearizedPoly, g: LinearizedPoly) -> LinearizedPoly:
    """h = f o g, h_k = sum_{i+j=k} a_i b_j^{q^i}"""
    f._check(g)
    GF = f.GF
    if f.is_zero or g.is_zero:
        return LinearizedPoly(GF)
    h = GF.Zeros(f.coeffs.size + g.coeffs.size - 1)
    for i, a in enumerate(f.coeffs):
        if a != 0:
            h[i: i + g.coeffs.size] += a * frobenius(g.coeffs, i)
    return LinearizedPoly(GF, h)


def lp_left_divide(h: LinearizedPoly, v: LinearizedPoly):
    """
    Quotient and remainder with h = v o quotient + remainder.

    The remainder has q-degree below that of v.
    """
    h._check(v)
    if v.is_zero:
        raise ParameterError("division by the zero linearized polynomial")
    GF = h.GF
    dv = v.q_degree
    shift = (GF.degree - dv % GF.degree) % GF.degree
    remainder = h
    quotient = GF.Zeros(max((h.q_degree or 0) - dv + 1, 1))
    while not remainder.is_zero and remainder.q_degree >= dv:
        j = remainder.q_degree - dv
        c = frobenius(remainder.leading / v.leading, shift)
        quotient[j] += c
        remainder = remainder - lp_compose(v, LinearizedPoly.monomial(GF, c, j))
    return LinearizedPoly(GF, quotient), remainder
