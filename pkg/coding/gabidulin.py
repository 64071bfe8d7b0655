"""
Gabidulin codes

Codewords are evaluations c = [f(g_1), ..., f(g_m)] of a linearized polynomial
f of q-degree < K at F_q-independent points. The minimum rank distance is
m - K + 1.

Decoding removes the known erasure directions with an F_q projection (the
projected word is a codeword of the Gabidulin code on the projected points,
shortened by s) and then solves the key equation V(r_i) = W(g_i) for a
linearized error-span polynomial V and W = V o f. Any 2t + s <= delta - 1 is
corrected; beyond that the decoder reports a DecodeFailure or miscorrects.
"""

import logging
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from .errors import ParameterError
from .ff import (
    ExtensionField,
    apply_base_map,
    field_of,
    frobenius_powers,
    nullspace,
    rank_over_base,
)
from .linpoly import LinearizedPoly, lp_evaluate, lp_left_divide

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DecodeFailure:
    """A decoder could not return a message"""
    reason: str
    error_rank: Optional[int] = None
    inconsistent: bool = False

    def describe(self) -> str:
        parts = [self.reason]
        if self.error_rank is not None:
            parts.append(f"estimated error rank {self.error_rank}")
        if self.inconsistent:
            parts.append("key equation inconsistent")
        return "; ".join(parts)


@dataclass(frozen=True)
class ErasureInfo:
    """Known erasure directions v_1..v_s in F_q^m, one per row"""
    directions: object = None

    @classmethod
    def none(cls, base_field, m: int):
        return cls(base_field.Zeros((0, m)))

    @property
    def s(self) -> int:
        return 0 if self.directions is None else int(self.directions.shape[0])

    def validate(self, m: int):
        if self.s == 0:
            return
        if self.directions.ndim != 2 or self.directions.shape[1] != m:
            raise ParameterError(f"erasure directions must be s x {m}")
        if int(np.linalg.matrix_rank(self.directions)) != self.s:
            raise ParameterError("erasure directions are not F_q-linearly independent")


class GabidulinCode:
    """[N x m, NK, m-K+1] Gabidulin code over a given extension field"""

    def __init__(self, field: ExtensionField, m: int, K: int, eval_points=None):
        if not 1 <= K <= m:
            raise ParameterError(f"need 1 <= K <= m, got K={K}, m={m}")
        if m > field.N:
            raise ParameterError(f"need m <= N, got m={m}, N={field.N}")
        self.field = field
        self.m = m
        self.K = K
        if eval_points is None:
            eval_points = field.basis_points(m)
        eval_points = np.atleast_1d(eval_points)
        if eval_points.size != m:
            raise ParameterError(f"expected {m} evaluation points, got {eval_points.size}")
        if rank_over_base(eval_points) != m:
            raise ParameterError("evaluation points are not F_q-linearly independent")
        self.eval_points = eval_points

    @property
    def GF(self):
        return self.field.ext

    @property
    def delta(self) -> int:
        return self.m - self.K + 1

    @property
    def rho(self) -> int:
        """Dimension over F_q"""
        return self.field.N * self.K

    def encode(self, message):
        return gab_encode(self, message)

    def decode(self, received, erasures: Optional[ErasureInfo] = None):
        return gab_decode(self, received, erasures)

    def __repr__(self):
        return f"GabidulinCode(q={self.field.q}, N={self.field.N}, m={self.m}, K={self.K})"


def gab_min_distance(code: GabidulinCode) -> int:
    return code.m - code.K + 1


def gab_encode(code: GabidulinCode, message):
    """[f(g_1), ..., f(g_m)] with f's coefficients taken from the message"""
    message = np.atleast_1d(message)
    if message.size != code.K:
        raise ParameterError(f"message length must be K={code.K}, got {message.size}")
    if field_of(message) is not code.GF:
        raise ParameterError("message symbols are not over the code's field")
    return lp_evaluate(LinearizedPoly(code.GF, message), code.eval_points)


def gab_project_erasures(code: GabidulinCode, erasures: Optional[ErasureInfo]):
    """
    Projection Q with v_j Q = 0 for every erasure direction, and the points g Q.

    Q has m - s columns; g Q stays F_q-independent.
    """
    base = code.field.base
    if erasures is None or erasures.s == 0:
        return base.Identity(code.m), code.eval_points
    erasures.validate(code.m)
    Q = nullspace(erasures.directions).T
    return Q, apply_base_map(code.eval_points, Q)


def gab_decode_at(points, received, K: int) -> Union[object, DecodeFailure]:
    """
    Errors-only decoding on arbitrary F_q-independent points.

    Returns the K message coefficients or a DecodeFailure.
    """
    points = np.atleast_1d(points)
    received = np.atleast_1d(received)
    GF = field_of(points)
    n = points.size
    if received.size != n:
        raise ParameterError(f"received word has length {received.size}, expected {n}")
    if n < K:
        return DecodeFailure(f"only {n} independent positions for dimension {K}")

    tau = (n - K) // 2
    system = np.hstack((
        frobenius_powers(received, tau + 1).T,
        -frobenius_powers(points, tau + K).T,
    ))
    solutions = nullspace(system)
    if solutions.shape[0] == 0:
        return DecodeFailure("key equation has only the trivial solution",
                             error_rank=tau + 1, inconsistent=True)

    solution = solutions[0]
    locator = LinearizedPoly(GF, solution[: tau + 1])
    product = LinearizedPoly(GF, solution[tau + 1:])
    if locator.is_zero:
        return DecodeFailure("error span polynomial vanished", inconsistent=True)

    f, remainder = lp_left_divide(product, locator)
    if not remainder.is_zero or (f.q_degree or 0) >= K:
        return DecodeFailure("division by the error span polynomial is not exact",
                             error_rank=locator.q_degree)

    error_rank = rank_over_base(received - lp_evaluate(f, points))
    if error_rank > tau:
        return DecodeFailure("residual error exceeds the decoding radius", error_rank=error_rank)

    logger.debug(f"Decoded with error rank {error_rank} (radius {tau})")
    return f.padded(K)


def gab_decode(code: GabidulinCode, received, erasures: Optional[ErasureInfo] = None):
    """
    Errors-and-erasures decoding.

    Returns the message, or a DecodeFailure. Recovery is guaranteed when
    2t + s <= delta - 1 for an error of rank t and s declared directions.
    """
    received = np.atleast_1d(received)
    if received.size != code.m:
        raise ParameterError(f"received word has length {received.size}, expected {code.m}")
    if field_of(received) is not code.GF:
        raise ParameterError("received symbols are not over the code's field")
    Q, points = gab_project_erasures(code, erasures)
    return gab_decode_at(points, apply_base_map(received, Q), code.K)


def random_independent(field: ExtensionField, count: int, rng):
    """count random F_q-independent elements of F_{q^N}"""
    if count > field.N:
        raise ParameterError(f"at most N={field.N} independent elements exist")
    while True:
        elements = field.random(count, rng)
        if rank_over_base(elements) == count:
            return elements


def random_full_rank(base_field, rows: int, cols: int, rng):
    """Random rows x cols matrix over F_q of rank min(rows, cols)"""
    target = min(rows, cols)
    while True:
        matrix = base_field.Random((rows, cols), seed=rng)
        if int(np.linalg.matrix_rank(matrix)) == target:
            return matrix


def random_rank_error(field: ExtensionField, m: int, rank: int, rng):
    """e = [e_1..e_t] U with independent e_i and a rank-t U over F_q"""
    if rank == 0:
        return field.zeros(m)
    values = random_independent(field, rank, rng)
    directions = random_full_rank(field.base, rank, m, rng)
    return apply_base_map(values, directions)


def random_erasure(field: ExtensionField, m: int, s: int, rng):
    """Erasure part sum r_j v_j and its ErasureInfo"""
    if s == 0:
        return field.zeros(m), ErasureInfo.none(field.base, m)
    directions = random_full_rank(field.base, s, m, rng)
    values = field.random(s, rng)
    return apply_base_map(values, directions), ErasureInfo(directions)


def exhaustive_messages(code: GabidulinCode):
    """Every message of a tiny code (q^{NK} of them)"""
    GF = code.GF
    for value in range(GF.order ** code.K):
        digits = []
        for _ in range(code.K):
            value, digit = divmod(value, GF.order)
            digits.append(digit)
        yield GF(digits)

