"""
Finite field arithmetic

Exact arithmetic in F_q and F_{q^N} on top of galois field arrays, plus the
linear algebra the codes need: solving systems over either field, column-space
membership over F_q and the rank of an F_{q^N}-vector over F_q.

Elements of F_{q^N} are galois FieldArray scalars or arrays. The F_q view of a
length-m vector is the N x m matrix whose column j holds the little-endian
power-basis coefficients of entry j (``expand``); ``collapse`` inverts it.
"""

import functools
import logging
from dataclasses import dataclass
from typing import Optional, Sequence, Type

import galois
import numpy as np

from models.params import FieldParams
from .errors import DivisionByZeroError, FieldMismatchError, ParameterError, PreconditionError

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# Field construction
# ---------------------------------------------------------------------------

def irreducible_modulus(q: int, N: int) -> list:
    """Little-endian coefficients of the modulus used for F_{q^N}"""
    poly = galois.irreducible_poly(q, N, method="min")
    return [int(c) for c in poly.coeffs[::-1]]


def next_prime(q: int) -> int:
    """Smallest prime strictly greater than q"""
    return int(galois.next_prime(q))


class ExtensionField:
    """
    The field F_{q^N} together with its base field F_q.

    Instances are cached per (q, N) by ``get_field``; construct directly only
    to supply a non-default modulus.
    """

    def __init__(self, q: int, N: int, modulus_poly: Optional[Sequence[int]] = None):
        if modulus_poly is None:
            modulus_poly = irreducible_modulus(q, N)
        self.params = FieldParams(q=q, N=N, modulus_poly=list(modulus_poly))
        self.base = galois.GF(q)
        if N == 1:
            self.ext = self.base
        else:
            poly = galois.Poly(list(modulus_poly), field=self.base, order="asc")
            self.ext = galois.GF(q ** N, irreducible_poly=poly)
        logger.debug(f"Constructed F_{q}^{N} with modulus {self.params.modulus_poly}")

    @property
    def q(self) -> int:
        return self.params.q

    @property
    def N(self) -> int:
        return self.params.N

    def __repr__(self):
        return f"ExtensionField(q={self.q}, N={self.N})"

    def element(self, coeffs: Sequence[int]):
        """Element from little-endian base-q coefficients"""
        if len(coeffs) > self.N:
            raise ParameterError(f"expected at most {self.N} coefficients, got {len(coeffs)}")
        value = 0
        for c in reversed(list(coeffs)):
            if not 0 <= int(c) < self.q:
                raise ParameterError(f"coefficient {c} outside [0, {self.q})")
            value = value * self.q + int(c)
        return self.ext(value)

    def x_power(self, i: int):
        """The power-basis element x^i (i < N)"""
        return self.ext(self.q ** i)

    def basis_points(self, m: int):
        """1, x, ..., x^{m-1}: the default Gabidulin evaluation points"""
        if m > self.N:
            raise ParameterError(f"need m <= N, got m={m}, N={self.N}")
        return self.ext([self.q ** i for i in range(m)])

    def zeros(self, shape):
        return self.ext.Zeros(shape)

    def random(self, shape, rng):
        return self.ext.Random(shape, seed=rng)

    def random_base(self, shape, rng):
        return self.base.Random(shape, seed=rng)

    def lift(self, matrix):
        """Embed an F_q array into F_{q^N}"""
        return lift(self.ext, matrix)

    def expand(self, v):
        return expand(v)

    def collapse(self, matrix):
        return collapse(self.ext, matrix)

    def frobenius(self, a, i: int):
        return frobenius(a, i)


@functools.lru_cache(maxsize=None)
def get_field(q: int, N: int) -> ExtensionField:
    """Cached ExtensionField with the default modulus"""
    return ExtensionField(q, N)


def as_int_array(x) -> np.ndarray:
    """Plain int64 ndarray view of a base-field array or nested list"""
    if isinstance(x, galois.FieldArray):
        x = x.view(np.ndarray)
    return np.asarray(x, dtype=np.int64)


def lift(GF, matrix):
    """Embed F_q entries (ints in [0, q)) into the field GF"""
    return GF(as_int_array(matrix).tolist())


def field_of(a) -> Type[galois.FieldArray]:
    """The galois field class an array belongs to"""
    if not isinstance(a, galois.FieldArray):
        raise ParameterError(f"expected a field array, got {type(a).__name__}")
    return type(a)


def _check_same_field(a, b):
    if type(a) is not type(b):
        raise FieldMismatchError(
            f"operands belong to different fields: {field_of(a).name} and {field_of(b).name}"
        )


# ---------------------------------------------------------------------------
# Element arithmetic
# ---------------------------------------------------------------------------

def ext_arith(a, b, op: str):
    """Add, subtract or multiply two elements of the same field"""
    _check_same_field(a, b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ParameterError(f"unknown operation '{op}', expected add, sub or mul")


def ext_inverse(a):
    """Multiplicative inverse; raises DivisionByZeroError on zero"""
    field_of(a)
    if np.any(a == 0):
        raise DivisionByZeroError("the zero element has no inverse")
    return np.reciprocal(a)


# ---------------------------------------------------------------------------
# F_q views and Frobenius
# ---------------------------------------------------------------------------

def expand(v):
    """N x len(v) matrix over F_q; column j is entry j, little-endian"""
    v = np.atleast_1d(v)
    if v.ndim != 1:
        raise ParameterError("expand expects a vector")
    return v.vector()[:, ::-1].T


def collapse(GF, matrix):
    """Inverse of ``expand``: columns of an N x m F_q matrix to F_{q^N} entries"""
    matrix = np.asarray(matrix)
    if matrix.shape[0] != GF.degree:
        raise ParameterError(f"expected {GF.degree} rows, got {matrix.shape[0]}")
    big_endian = np.ascontiguousarray(as_int_array(matrix).T[:, ::-1])
    return GF.Vector(galois.GF(GF.characteristic)(big_endian))


@functools.lru_cache(maxsize=None)
def _frobenius_matrix(GF, i: int):
    """F_q matrix of a -> a^{q^i} in the power basis"""
    q, N = GF.characteristic, GF.degree
    base = galois.GF(q)
    if i == 0:
        return base.Identity(N)
    if i == 1:
        basis = GF([q ** j for j in range(N)])
        return expand(basis ** q)
    return _frobenius_matrix(GF, i - 1) @ _frobenius_matrix(GF, 1)


def frobenius(a, i: int):
    """a^{q^i}, elementwise on arrays"""
    if i < 0:
        raise ParameterError(f"Frobenius power must be non-negative, got {i}")
    GF = field_of(a)
    i %= GF.degree
    if i == 0 or GF.degree == 1:
        return a.copy()
    scalar = np.ndim(a) == 0
    flat = np.atleast_1d(a).reshape(-1)
    image = collapse(GF, _frobenius_matrix(GF, i) @ expand(flat))
    if scalar:
        return image[0]
    return image.reshape(np.shape(a))


def apply_base_map(v, Q):
    """v Q for an F_{q^N} row vector v and an F_q matrix Q"""
    v = np.atleast_1d(v)
    if v.size == 0:
        return field_of(v).Zeros(Q.shape[1])
    return collapse(field_of(v), expand(v) @ Q)


def frobenius_powers(v, count: int):
    """Stack of v^{q^0}, ..., v^{q^{count-1}} as rows"""
    GF = field_of(v)
    v = np.atleast_1d(v)
    if count <= 0:
        return GF.Zeros((0, v.size))
    return np.vstack([v] + [frobenius(v, i) for i in range(1, count)])


def rank_over_base(v) -> int:
    """Rank over F_q of the N x m expansion of v"""
    v = np.atleast_1d(v)
    if v.size == 0:
        return 0
    return int(np.linalg.matrix_rank(expand(v)))


# ---------------------------------------------------------------------------
# Linear algebra
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LinearSolution:
    """Outcome of solving A x = b"""
    solution: Optional[galois.FieldArray]
    rank: int
    nullspace: galois.FieldArray
    consistent: bool


def solve_linear(A, b) -> LinearSolution:
    """
    Solve A x = b over the field of A.

    b may be a vector or a matrix of right-hand sides. Returns a particular
    solution, the rank of A and a null space basis (as rows), or a solution of
    None with ``consistent=False``.
    """
    GF = field_of(A)
    if A.ndim != 2:
        raise ParameterError("A must be a matrix")
    b = GF(b) if not isinstance(b, galois.FieldArray) else b
    _check_same_field(A, b)
    rows, cols = A.shape
    if b.shape[0] != rows:
        raise ParameterError(f"dimension mismatch: A has {rows} rows, b has {b.shape[0]}")

    vector_rhs = b.ndim == 1
    rhs = b.reshape(rows, 1) if vector_rhs else b
    reduced = np.hstack((A, rhs)).row_reduce(ncols=cols)

    pivots = []
    consistent = True
    for r in range(rows):
        nonzero = np.flatnonzero(reduced[r, :cols])
        if nonzero.size == 0:
            if np.any(reduced[r, cols:] != 0):
                consistent = False
            continue
        pivots.append((r, int(nonzero[0])))

    pivot_cols = {c for _, c in pivots}
    free_cols = [c for c in range(cols) if c not in pivot_cols]
    nullspace = GF.Zeros((len(free_cols), cols))
    for idx, f in enumerate(free_cols):
        nullspace[idx, f] = 1
        for r, c in pivots:
            nullspace[idx, c] = -reduced[r, f]

    solution = None
    if consistent:
        solution = GF.Zeros((cols, rhs.shape[1]))
        for r, c in pivots:
            solution[c] = reduced[r, cols:]
        if vector_rhs:
            solution = solution[:, 0]

    return LinearSolution(solution=solution, rank=len(pivots), nullspace=nullspace,
                          consistent=consistent)


def nullspace(A):
    """Basis of {x : A x = 0} as rows"""
    GF = field_of(A)
    return solve_linear(A, GF.Zeros(A.shape[0])).nullspace


def column_space_basis(M):
    """Matrix whose columns are a basis of the column space of M"""
    GF = field_of(M)
    if M.size == 0:
        return GF.Zeros((M.shape[0], 0))
    reduced = M.T.row_reduce()
    nonzero = [r for r in range(reduced.shape[0]) if np.any(reduced[r] != 0)]
    return reduced[nonzero].T


def in_column_space(M, v) -> bool:
    """True iff every column of v lies in the column space of M"""
    v = v.reshape(M.shape[0], -1)
    if M.shape[1] == 0:
        return not np.any(v != 0)
    return int(np.linalg.matrix_rank(np.hstack((M, v)))) == int(np.linalg.matrix_rank(M))


def require_independent(points, what: str = "points"):
    """Raise PreconditionError unless the points are F_q-linearly independent"""
    points = np.atleast_1d(points)
    if rank_over_base(points) != points.size:
        raise PreconditionError(f"{what} are not F_q-linearly independent")


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------

def element_to_text(a) -> str:
    """N little-endian base-q digits joined by '.', e.g. '2.0.1'"""
    GF = field_of(a)
    value, digits = int(a), []
    for _ in range(GF.degree):
        value, digit = divmod(value, GF.characteristic)
        digits.append(str(digit))
    return ".".join(digits)


def element_from_text(GF, text: str):
    parts = text.strip().split(".")
    if len(parts) != GF.degree:
        raise ParameterError(f"expected {GF.degree} digits, got '{text}'")
    value = 0
    for part in reversed(parts):
        if not part.isdigit() or int(part) >= GF.characteristic:
            raise ParameterError(f"invalid base-{GF.characteristic} digit '{part}' in '{text}'")
        value = value * GF.characteristic + int(part)
    return GF(value)


def vector_to_text(v) -> str:
    return " ".join(element_to_text(a) for a in np.atleast_1d(v))


def vector_from_text(GF, text: str):
    return GF([int(element_from_text(GF, part)) for part in text.split()])
