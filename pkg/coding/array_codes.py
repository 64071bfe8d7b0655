"""
MDS array codes

An (n, k) array code stores alpha symbols per node. Data x = [x_1 .. x_k]
(k blocks of alpha symbols over F_{q^N}) is encoded as y = x G with the block
generator matrix G = [A_{i,j}] over F_q, so node j holds y_j = sum_i x_i A_{i,j}.
Blocks act on the right; all symbol vectors are row vectors.

Repair plans say what each helper sends (y_h V_h, V_h an alpha x beta_h matrix)
and how the newcomer maps the stacked downloads back to alpha symbols.
"""

import itertools
import logging
from dataclasses import dataclass
from typing import Dict, Optional, Sequence, Tuple

import galois
import numpy as np
import yaml

from config import config
from .errors import FieldMismatchError, ParameterError, RepairError
from .ff import apply_base_map, as_int_array, field_of, next_prime

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RepairPlan:
    """How to rebuild one failed node from its helpers"""
    failed: int
    helpers: Tuple[int, ...]
    download_matrices: Dict[int, galois.FieldArray]
    reconstruct: galois.FieldArray
    strategy: str = "search"

    @property
    def downloads(self) -> Dict[int, int]:
        """Symbols sent by each helper"""
        return {h: int(self.download_matrices[h].shape[1]) for h in self.helpers}

    @property
    def bandwidth(self) -> int:
        return sum(self.downloads.values())

    @property
    def max_beta(self) -> int:
        return max(self.downloads.values())

    def payload_slices(self) -> Dict[int, slice]:
        """Where each helper's payload sits in the stacked download vector"""
        slices, start = {}, 0
        for h in self.helpers:
            width = self.downloads[h]
            slices[h] = slice(start, start + width)
            start += width
        return slices


class ArrayCode:
    """(n, k, alpha) block generator matrix over F_q with cached repair plans"""

    def __init__(self, name: str, n: int, k: int, alpha: int, blocks, d: Optional[int] = None):
        if not isinstance(blocks, galois.FieldArray):
            raise ParameterError("blocks must be a galois FieldArray over F_q")
        if not 0 < k < n:
            raise ParameterError(f"need 0 < k < n, got n={n}, k={k}")
        if blocks.shape != (k, n, alpha, alpha):
            raise ParameterError(
                f"blocks must have shape {(k, n, alpha, alpha)}, got {blocks.shape}"
            )
        d = n - 1 if d is None else d
        if not k <= d <= n - 1:
            raise ParameterError(f"need k <= d <= n-1, got d={d}")
        if alpha % (d - k + 1):
            raise ParameterError(f"(d-k+1) = {d - k + 1} must divide alpha = {alpha}")
        self.name = name
        self.n = n
        self.k = k
        self.alpha = alpha
        self.d = d
        self.base = field_of(blocks)
        self.blocks = blocks
        self.notes: Dict[str, str] = {}
        self._plans: Dict[tuple, RepairPlan] = {}

    @property
    def q(self) -> int:
        return self.base.order

    @property
    def beta(self) -> int:
        return self.alpha // (self.d - self.k + 1)

    @property
    def generator(self):
        """k*alpha x n*alpha matrix G"""
        rows = [np.hstack([self.blocks[i, j] for j in range(self.n)]) for i in range(self.k)]
        return np.vstack(rows)

    def block_column(self, node: int):
        """G_j: the k*alpha x alpha column of node j (1-based)"""
        self._check_node(node)
        return np.vstack([self.blocks[i, node - 1] for i in range(self.k)])

    def columns(self, nodes: Sequence[int]):
        return np.hstack([self.block_column(j) for j in nodes])

    def is_systematic_subset(self, nodes: Sequence[int]) -> bool:
        """True when the chosen columns of G form the identity"""
        G_S = self.columns(nodes)
        return G_S.shape[0] == G_S.shape[1] and bool(np.all(G_S == self.base.Identity(G_S.shape[0])))

    def plan(self, failed: int, helpers: Optional[Sequence[int]] = None) -> RepairPlan:
        """Cached repair plan for a node and helper set (default: all others)"""
        key = (failed, tuple(sorted(helpers)) if helpers is not None else None)
        if key not in self._plans:
            from .repair_search import ac_find_repair_plan
            self._plans[key] = ac_find_repair_plan(self, failed, helpers)
        return self._plans[key]

    def _check_node(self, node: int):
        if not 1 <= node <= self.n:
            raise ParameterError(f"node index {node} outside [1, {self.n}]")

    def __repr__(self):
        return f"ArrayCode({self.name}, n={self.n}, k={self.k}, alpha={self.alpha}, q={self.q})"


def _check_symbols(code: ArrayCode, symbols):
    GF = field_of(symbols)
    if GF.characteristic != code.q:
        raise FieldMismatchError(
            f"symbols over characteristic {GF.characteristic}, code over F_{code.q}"
        )
    return GF


def ac_encode(code: ArrayCode, x):
    """y = x G: k blocks of alpha symbols to n blocks"""
    _check_symbols(code, x)
    if x.shape != (code.k, code.alpha):
        raise ParameterError(f"input must have shape {(code.k, code.alpha)}, got {x.shape}")
    y = apply_base_map(x.reshape(-1), code.generator)
    return y.reshape(code.n, code.alpha)


def ac_verify_mds(code: ArrayCode) -> bool:
    """Every k x k block submatrix of G has full rank k*alpha"""
    full = code.k * code.alpha
    for subset in itertools.combinations(range(1, code.n + 1), code.k):
        if int(np.linalg.matrix_rank(code.columns(subset))) != full:
            logger.debug(f"{code.name}: block submatrix {subset} is singular")
            return False
    return True


def ac_decode_any_k(code: ArrayCode, observed, indices: Sequence[int]):
    """Recover x from the contents of any k distinct nodes"""
    _check_symbols(code, observed)
    indices = list(indices)
    if len(indices) != code.k or len(set(indices)) != code.k:
        raise ParameterError(f"need {code.k} distinct node indices, got {indices}")
    if observed.shape != (code.k, code.alpha):
        raise ParameterError(f"observed must have shape {(code.k, code.alpha)}")
    if code.is_systematic_subset(indices):
        return observed.copy()
    try:
        inverse = np.linalg.inv(code.columns(indices))
    except np.linalg.LinAlgError as exc:
        raise RepairError(f"block submatrix for nodes {indices} is singular") from exc
    return apply_base_map(observed.reshape(-1), inverse).reshape(code.k, code.alpha)


def ac_inner_map(code: ArrayCode, indices: Sequence[int]):
    """F_q matrix B' with x_hat = y_S B' for the collector's subset S"""
    return np.linalg.inv(code.columns(list(indices)))


def ac_downloads(code: ArrayCode, contents: Dict[int, object], plan: RepairPlan) -> Dict[int, object]:
    """Honest payload y_h V_h of every helper"""
    missing = [h for h in plan.helpers if h not in contents]
    if missing:
        raise ParameterError(f"helpers {missing} are not among the surviving nodes")
    return {h: apply_base_map(contents[h], plan.download_matrices[h]) for h in plan.helpers}


def ac_repair_from_downloads(plan: RepairPlan, payloads: Dict[int, object]):
    """Assemble the lost block from (possibly altered) helper payloads"""
    stacked = np.concatenate([np.atleast_1d(payloads[h]) for h in plan.helpers])
    if stacked.size != plan.reconstruct.shape[0]:
        raise RepairError(
            f"downloads carry {stacked.size} symbols, plan expects {plan.reconstruct.shape[0]}"
        )
    return apply_base_map(stacked, plan.reconstruct)


def ac_repair(code: ArrayCode, y_surviving: Dict[int, object], plan: RepairPlan):
    """Content of the failed node rebuilt from the helpers' current contents"""
    if plan.failed in plan.helpers:
        raise ParameterError("the failed node cannot help its own repair")
    return ac_repair_from_downloads(plan, ac_downloads(code, y_surviving, plan))


def ac_repair_bandwidth(plan: RepairPlan) -> int:
    return plan.bandwidth


# ---------------------------------------------------------------------------
# Concrete (5,3) codes
# ---------------------------------------------------------------------------

def _systematic_blocks(GF, k: int, n: int, alpha: int, parity: Dict[Tuple[int, int], object]):
    blocks = GF.Zeros((k, n, alpha, alpha))
    for i in range(k):
        blocks[i, i] = GF.Identity(alpha)
        for j in range(k, n):
            blocks[i, j] = parity[(i, j)]
    return blocks


def zigzag_5_3(q: Optional[int] = None) -> ArrayCode:
    """(5,3) Zigzag code, alpha = 4, parities [I; I; I] and [I; A_2; A_3]"""
    q = q or config.DEFAULT_Q
    if q < 3:
        raise ParameterError("the Zigzag code needs an invertible 2, so q >= 3")
    GF = galois.GF(q)
    I = GF.Identity(4)
    A2 = GF([[0, 0, 1, 0], [0, 0, 0, 1], [2, 0, 0, 0], [0, 2, 0, 0]])
    A3 = GF([[0, 1, 0, 0], [2, 0, 0, 0], [0, 0, 0, 2], [0, 0, 1, 0]])
    parity = {(0, 3): I, (1, 3): I, (2, 3): I, (0, 4): I, (1, 4): A2, (2, 4): A3}
    return ArrayCode("zigzag_5_3", 5, 3, 4, _systematic_blocks(GF, 3, 5, 4, parity))


def hadamard_sign_matrix(GF, i: int, alpha: int):
    """X_i = I_{2^{i-1}} (x) blkdiag(I_{alpha/2^i}, -I_{alpha/2^i})"""
    half = alpha // 2 ** i
    pattern = np.concatenate((np.ones(half, dtype=np.int64), -np.ones(half, dtype=np.int64)))
    signs = np.kron(np.ones(2 ** (i - 1), dtype=np.int64), pattern) % GF.order
    return GF(np.diag(signs))


def hadamard_solutions(q: int):
    """All (a, b) over F_q with a^2 - b^2 = -1, lexicographic"""
    return [(a, b) for a in range(q) for b in range(q) if (a * a - b * b + 1) % q == 0]


def _hadamard_code(q: int, coefficients) -> ArrayCode:
    alpha = 2 ** 4
    GF = galois.GF(q)
    I = GF.Identity(alpha)
    X4 = hadamard_sign_matrix(GF, 4, alpha)
    parity = {}
    for i, (a, b) in enumerate(coefficients):
        A_t = GF(a) * hadamard_sign_matrix(GF, i + 1, alpha) + GF(b) * X4 + I
        parity[(i, 3)] = I
        parity[(i, 4)] = A_t.T
    code = ArrayCode("hadamard_5_3", 5, 3, alpha, _systematic_blocks(GF, 3, 5, alpha, parity))
    code.notes["coefficients"] = str([tuple(c) for c in coefficients])
    code.notes["q"] = str(q)
    return code


def hadamard_5_3(q: Optional[int] = None, coefficients=None) -> ArrayCode:
    """
    (5,3) Hadamard design code, alpha = 16, A_{i,5}^T = a_i X_i + b_i X_4 + I.

    With explicit coefficients every pair must satisfy a^2 - b^2 = -1 over F_q.
    Otherwise the lexicographically first MDS choice is searched, moving to the
    next prime when F_q has none.
    """
    q = q or config.DEFAULT_Q
    if coefficients is not None:
        coefficients = [tuple(int(v) for v in pair) for pair in coefficients]
        if len(coefficients) != 3:
            raise ParameterError("need one (a_i, b_i) pair for each of the 3 systematic nodes")
        bad = [(a, b) for a, b in coefficients if (a * a - b * b + 1) % q]
        if bad:
            raise ParameterError(f"pairs {bad} violate a^2 - b^2 = -1 over F_{q}")
        return _hadamard_code(q, coefficients)

    start = q
    while q <= config.MAX_PRIME:
        for triple in itertools.product(hadamard_solutions(q), repeat=3):
            code = _hadamard_code(q, triple)
            if ac_verify_mds(code):
                if q != start:
                    logger.warning(
                        f"No MDS Hadamard coefficients over F_{start}; escalated to F_{q}"
                    )
                logger.info(f"Hadamard (5,3) over F_{q} with (a_i, b_i) = {list(triple)}")
                return code
        q = next_prime(q)
    raise ParameterError(f"no MDS Hadamard coefficients over any F_q with q <= {config.MAX_PRIME}")


# ---------------------------------------------------------------------------
# Structured text form
# ---------------------------------------------------------------------------

def _block_to_text(block) -> str:
    return "; ".join(" ".join(str(v) for v in row) for row in as_int_array(block))


def _block_from_text(text: str):
    return [[int(v) for v in row.split()] for row in text.split(";")]


def ac_serialize(code: ArrayCode) -> str:
    """YAML text: geometry plus every block in row-major digits"""
    document = {
        "name": code.name,
        "n": code.n,
        "k": code.k,
        "alpha": code.alpha,
        "d": code.d,
        "q": code.q,
        "blocks": [
            [_block_to_text(code.blocks[i, j]) for j in range(code.n)]
            for i in range(code.k)
        ],
    }
    return yaml.safe_dump(document, sort_keys=False)


def ac_deserialize(text: str) -> ArrayCode:
    document = yaml.safe_load(text)
    try:
        GF = galois.GF(int(document["q"]))
        blocks = GF([[_block_from_text(cell) for cell in row] for row in document["blocks"]])
        return ArrayCode(document["name"], int(document["n"]), int(document["k"]),
                         int(document["alpha"]), blocks, d=int(document["d"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise ParameterError(f"malformed array code text: {exc}") from exc


INNER_CODES = {"zigzag": zigzag_5_3, "hadamard": hadamard_5_3}


def ac_by_name(name: str, q: Optional[int] = None) -> ArrayCode:
    """One of the bundled (5,3) codes"""
    try:
        factory = INNER_CODES[name]
    except KeyError:
        raise ParameterError(f"unknown array code '{name}', expected one of {sorted(INNER_CODES)}")
    return factory(q)
