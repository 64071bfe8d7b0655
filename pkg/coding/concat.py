"""
Concatenated Gabidulin / MDS array storage

A file of K*N base-field digits is read as K symbols of F_{q^N}, encoded by a
Gabidulin code of length m = alpha*k, split into k blocks of alpha symbols and
spread over n nodes by an MDS array code. A collector inverts the array code
on any k nodes and hands the result, plus the directions of nodes it knows to
be bad, to the Gabidulin decoder.
"""

import functools
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Union

import numpy as np

from config import config
from models.params import CapacityRow, Scheme, SystemParams
from .array_codes import ArrayCode, RepairPlan, ac_decode_any_k, ac_encode, ac_inner_map
from .errors import InfeasibleParametersError, ParameterError
from .ff import apply_base_map, as_int_array, collapse, expand, get_field
from .gabidulin import DecodeFailure, ErasureInfo, GabidulinCode, gab_decode, gab_decode_at, gab_encode

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# Parameter planning
# ---------------------------------------------------------------------------

def _check_geometry(alpha: int, k: int, n: int, d: int):
    if not k < n:
        raise ParameterError(f"k < n violated (k={k}, n={n})")
    if not k <= d <= n - 1:
        raise ParameterError(f"k <= d <= n-1 violated (d={d})")
    if alpha % (d - k + 1):
        raise ParameterError(f"(d-k+1) | alpha violated ({d - k + 1} does not divide {alpha})")


def plan_params(alpha: int, k: int, t: int, n: int, d: int, q: Optional[int] = None) -> SystemParams:
    """Static-scheme parameters at the resilience capacity: K = alpha(k-2t), delta = 2t*alpha+1"""
    if t < 0:
        raise ParameterError(f"t >= 0 violated (t={t})")
    if k <= 2 * t:
        raise InfeasibleParametersError(f"k > 2t violated (k={k}, t={t})")
    _check_geometry(alpha, k, n, d)
    m = alpha * k
    K = alpha * (k - 2 * t)
    return SystemParams(q=q or config.DEFAULT_Q, N=m, m=m, alpha=alpha, k=k, n=n, d=d,
                        beta=alpha // (d - k + 1), t=t, K=K, delta=m - K + 1)


def naive_repair_capacity(alpha: int, beta: int, k: int, t: int) -> int:
    """Largest outer dimension the naive dynamic repair supports: alpha + (k-2t-1)beta"""
    if k <= 2 * t:
        raise InfeasibleParametersError(f"k > 2t violated (k={k}, t={t})")
    return alpha + (k - 2 * t - 1) * beta


def plan_naive_params(alpha: int, k: int, t: int, n: int, d: int, ell: Optional[int] = None,
                      enforce_bound: bool = True, q: Optional[int] = None) -> SystemParams:
    """Parameters for naive dynamic repair with outer dimension ell (default: the bound)"""
    _check_geometry(alpha, k, n, d)
    beta = alpha // (d - k + 1)
    bound = naive_repair_capacity(alpha, beta, k, t)
    ell = bound if ell is None else ell
    if enforce_bound and ell > bound:
        raise InfeasibleParametersError(
            f"ell <= alpha + (k-2t-1)beta violated (ell={ell}, bound={bound})"
        )
    m = alpha * k
    return SystemParams(q=q or config.DEFAULT_Q, N=m, m=m, alpha=alpha, k=k, n=n, d=d,
                        beta=beta, t=t, K=ell, delta=m - ell + 1,
                        scheme=Scheme.NAIVE, enforce_bound=enforce_bound)


def resilience_capacity(alpha: int, beta: int, k: int, d: int, t: int) -> int:
    """sum_{i=2t+1}^{k} min((d-i+1)beta, alpha)"""
    if 2 * t >= k:
        raise ParameterError(f"t < k/2 violated (t={t}, k={k})")
    return sum(min((d - i + 1) * beta, alpha) for i in range(2 * t + 1, k + 1))


def capacity_table(alpha: int, k: int, n: int, d: int) -> List[CapacityRow]:
    """Capacity, planned dimension and naive bound for every feasible t"""
    _check_geometry(alpha, k, n, d)
    beta = alpha // (d - k + 1)
    rows = []
    t = 0
    while 2 * t < k:
        params = plan_params(alpha, k, t, n, d)
        capacity = resilience_capacity(alpha, beta, k, d, t)
        rows.append(CapacityRow(
            t=t, K=params.K, delta=params.delta, capacity=capacity,
            naive_bound=naive_repair_capacity(alpha, beta, k, t),
            attained=params.K == capacity,
        ))
        t += 1
    return rows


@functools.lru_cache(maxsize=None)
def outer_code(params: SystemParams) -> GabidulinCode:
    """Gabidulin code of length m and dimension K over F_{q^N}"""
    return GabidulinCode(get_field(params.q, params.N), params.m, params.K)


def check_inner_code(params: SystemParams, code: ArrayCode):
    mismatched = [
        name for name, want, have in (
            ("q", params.q, code.q), ("n", params.n, code.n), ("k", params.k, code.k),
            ("alpha", params.alpha, code.alpha), ("d", params.d, code.d),
        ) if want != have
    ]
    if mismatched:
        raise ParameterError(f"array code {code.name} does not match params in {mismatched}")


# ---------------------------------------------------------------------------
# Files
# ---------------------------------------------------------------------------

@dataclass
class StoredFile:
    """K*N base digits and the K symbols they form (column i = i-th N digits)"""
    raw: np.ndarray
    message: object = field(repr=False)

    def __eq__(self, other):
        if not isinstance(other, StoredFile):
            return NotImplemented
        return np.array_equal(self.raw, other.raw)


def file_from_digits(params: SystemParams, raw) -> StoredFile:
    raw = as_int_array(raw).reshape(-1)
    if raw.size != params.file_size:
        raise ParameterError(f"file must hold K*N = {params.file_size} digits, got {raw.size}")
    if np.any((raw < 0) | (raw >= params.q)):
        raise ParameterError(f"file digits must lie in [0, {params.q})")
    GF = get_field(params.q, params.N).ext
    message = collapse(GF, raw.reshape(params.K, params.N).T)
    return StoredFile(raw=raw, message=message)


def file_from_message(message) -> StoredFile:
    raw = as_int_array(expand(message).T).reshape(-1)
    return StoredFile(raw=raw, message=message)


def random_file(params: SystemParams, rng) -> StoredFile:
    return file_from_digits(params, rng.integers(0, params.q, params.file_size))


def digits_per_byte(q: int) -> int:
    """Smallest d with q^d >= 256"""
    d = 1
    while q ** d < 256:
        d += 1
    return d


def file_from_bytes(params: SystemParams, data: bytes) -> List[StoredFile]:
    """
    Stripes of K*N digits holding an 8-byte length header followed by the
    data, each byte written as big-endian base-q digits, zero padded.
    """
    width = digits_per_byte(params.q)
    payload = len(data).to_bytes(8, "big") + data
    digits = []
    for byte in payload:
        chunk = []
        for _ in range(width):
            byte, digit = divmod(byte, params.q)
            chunk.append(digit)
        digits.extend(reversed(chunk))
    stripes = -(-len(digits) // params.file_size)
    digits.extend([0] * (stripes * params.file_size - len(digits)))
    raw = np.array(digits, dtype=np.int64).reshape(stripes, params.file_size)
    return [file_from_digits(params, row) for row in raw]


def file_to_bytes(params: SystemParams, stripes: Sequence[StoredFile]) -> bytes:
    width = digits_per_byte(params.q)
    digits = np.concatenate([s.raw for s in stripes]) if stripes else np.zeros(0, dtype=np.int64)
    usable = digits.size // width
    values = bytearray()
    for i in range(usable):
        value = 0
        for digit in digits[i * width:(i + 1) * width]:
            value = value * params.q + int(digit)
        if value > 255:
            raise ParameterError(f"digit group {i} does not encode a byte")
        values.append(value)
    if len(values) < 8:
        raise ParameterError("stripes too short for the length header")
    length = int.from_bytes(values[:8], "big")
    if length > len(values) - 8:
        raise ParameterError(f"header claims {length} bytes, stripes hold {len(values) - 8}")
    return bytes(values[8: 8 + length])


# ---------------------------------------------------------------------------
# Store and collect
# ---------------------------------------------------------------------------

def store(params: SystemParams, file: StoredFile, code: ArrayCode):
    """n x alpha node contents for one file"""
    check_inner_code(params, code)
    if file.raw.size != params.file_size:
        raise ParameterError(f"file must hold K*N = {params.file_size} digits, got {file.raw.size}")
    codeword = gab_encode(outer_code(params), file.message)
    return ac_encode(code, codeword.reshape(params.k, params.alpha))


def node_erasure_directions(params: SystemParams, code: ArrayCode, indices: Sequence[int],
                            erased_nodes: Sequence[int]):
    """Rows of B' belonging to each erased node, in codeword coordinates"""
    base = get_field(params.q, params.N).base
    erased = [j for j in indices if j in set(erased_nodes)]
    if not erased:
        return base.Zeros((0, params.m))
    if code.is_systematic_subset(indices):
        inner = base.Identity(params.m)
    else:
        inner = ac_inner_map(code, indices)
    a = params.alpha
    return np.vstack([inner[pos * a:(pos + 1) * a] for pos, j in enumerate(indices) if j in erased])


def collect(params: SystemParams, code: ArrayCode, contents: Dict[int, object],
            erased_nodes: Sequence[int] = (), extra_directions=None) -> Union[StoredFile, DecodeFailure]:
    """
    Recover the file from k node contents.

    ``erased_nodes`` lists nodes among ``contents`` whose content is known to be
    unreliable; their alpha directions are declared as erasures. Returns a
    DecodeFailure when the outer decoder cannot resolve the errors.
    """
    check_inner_code(params, code)
    indices = sorted(contents)
    if len(indices) != params.k:
        raise ParameterError(f"need {params.k} nodes, got {len(indices)}")
    observed = np.vstack([np.atleast_1d(contents[j]) for j in indices])
    if code.is_systematic_subset(indices):
        received = observed.reshape(-1)
    else:
        received = ac_decode_any_k(code, observed, indices).reshape(-1)

    directions = node_erasure_directions(params, code, indices, erased_nodes)
    if extra_directions is not None and extra_directions.shape[0]:
        directions = np.vstack((directions, extra_directions))
    erasures = ErasureInfo(directions) if directions.shape[0] else None

    result = gab_decode(outer_code(params), received, erasures)
    if isinstance(result, DecodeFailure):
        logger.warning(f"Collect from nodes {indices} failed: {result.describe()}")
        return result
    return file_from_message(result)


# ---------------------------------------------------------------------------
# Naive dynamic repair
# ---------------------------------------------------------------------------

def naive_repair_decode(params: SystemParams, code: ArrayCode, plan: RepairPlan,
                        payloads: Dict[int, object]) -> Union[StoredFile, DecodeFailure]:
    """
    Decode the whole file from one round of repair downloads.

    The stacked downloads are evaluations of the message polynomial at g M for
    the stacked download map M; the F_q-independent columns of M give a
    Gabidulin code of length rank(M) and dimension K.
    """
    check_inner_code(params, code)
    outer = outer_code(params)
    M = np.hstack([code.block_column(h) @ plan.download_matrices[h] for h in plan.helpers])
    reduced = M.row_reduce()
    pivots = sorted({int(np.flatnonzero(row)[0]) for row in reduced if np.any(row != 0)})
    stacked = np.concatenate([np.atleast_1d(payloads[h]) for h in plan.helpers])
    points = apply_base_map(outer.eval_points, M[:, pivots])
    logger.debug(f"Naive repair decodes a length-{len(pivots)} code of dimension {params.K}")
    result = gab_decode_at(points, stacked[pivots], params.K)
    if isinstance(result, DecodeFailure):
        return result
    return file_from_message(result)
