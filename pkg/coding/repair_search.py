"""
Repair plan search for MDS array codes

Plans are tried in a fixed order so the result is reproducible:

1. row selection: every helper sends beta of its stored symbols
2. aligned subspaces: after re-basing so the failed node is systematic, the
   remaining helpers share download subspaces chosen so the interference from
   the other systematic nodes fits in beta symbols
3. random subspaces, capped by PLAN_RANDOM_TRIALS
4. full download from k helpers, logged as a warning

A candidate becomes a plan once the reconstruct map solving M R = G_failed
exists and survives PLAN_VERIFY_TRIALS random encodings.
"""

import itertools
import logging
from math import comb
from typing import Dict, Iterator, List, Optional, Sequence

import numpy as np

from config import config
from .array_codes import ArrayCode, RepairPlan
from .errors import ParameterError, PlanSearchError
from .ff import column_space_basis, solve_linear

logger = logging.getLogger(__name__)


def gaussian_binomial(n: int, k: int, q: int) -> int:
    """Number of k-dimensional subspaces of F_q^n"""
    if not 0 <= k <= n:
        return 0
    numerator, denominator = 1, 1
    for i in range(k):
        numerator *= q ** (n - i) - 1
        denominator *= q ** (i + 1) - 1
    return numerator // denominator


def enumerate_subspaces(base, alpha: int, beta: int) -> Iterator:
    """Every beta-dimensional subspace of F_q^alpha as an alpha x beta basis (RREF order)"""
    q = base.order
    for pivots in itertools.combinations(range(alpha), beta):
        free = [(r, c) for r, p in enumerate(pivots) for c in range(p + 1, alpha) if c not in pivots]
        for values in itertools.product(range(q), repeat=len(free)):
            rows = np.zeros((beta, alpha), dtype=np.int64)
            for r, p in enumerate(pivots):
                rows[r, p] = 1
            for (r, c), v in zip(free, values):
                rows[r, c] = v
            yield base(rows.T.tolist())


def structured_subspaces(base, alpha: int, beta: int) -> List:
    """
    Subspaces aligned with Kronecker sign patterns: for each bit of the row
    index, the pairings e_c +/- e_{c^bit} and the two sign eigenspaces.
    """
    if alpha & (alpha - 1) or beta * 2 != alpha:
        return []
    candidates = []
    for bit in range(alpha.bit_length() - 1):
        mask = 1 << bit
        low = [c for c in range(alpha) if not c & mask]
        high = [c for c in range(alpha) if c & mask]
        pair_sum = base.Zeros((alpha, beta))
        pair_diff = base.Zeros((alpha, beta))
        lower = base.Zeros((alpha, beta))
        upper = base.Zeros((alpha, beta))
        for col, c in enumerate(low):
            pair_sum[c, col] = 1
            pair_sum[c | mask, col] = 1
            pair_diff[c, col] = 1
            pair_diff[c | mask, col] = -base(1)
            lower[c, col] = 1
            upper[high[col], col] = 1
        candidates.extend((pair_sum, pair_diff, lower, upper))
    return candidates


def _verify(code: ArrayCode, plan: RepairPlan, trials: int, rng) -> bool:
    """Repair of PLAN_VERIFY_TRIALS random base-field encodings"""
    G = code.generator
    X = code.base.Random((trials, code.k * code.alpha), seed=rng)
    Y = X @ G
    stacked = np.hstack([
        Y[:, (h - 1) * code.alpha: h * code.alpha] @ plan.download_matrices[h]
        for h in plan.helpers
    ])
    target = Y[:, (plan.failed - 1) * code.alpha: plan.failed * code.alpha]
    return bool(np.all(stacked @ plan.reconstruct == target))


def _complete(code: ArrayCode, failed: int, helpers: Sequence[int],
              downloads: Dict[int, object], strategy: str) -> Optional[RepairPlan]:
    """Solve M R = G_failed for the stacked download map M, or None"""
    M = np.hstack([code.block_column(h) @ downloads[h] for h in helpers])
    result = solve_linear(M, code.block_column(failed))
    if not result.consistent:
        return None
    plan = RepairPlan(failed=failed, helpers=tuple(helpers),
                      download_matrices={h: downloads[h] for h in helpers},
                      reconstruct=result.solution, strategy=strategy)
    rng = np.random.default_rng([failed, code.n, code.k, code.alpha])
    if not _verify(code, plan, config.PLAN_VERIFY_TRIALS, rng):
        logger.error(f"{code.name}: {strategy} plan for node {failed} failed verification")
        return None
    return plan


def ac_trivial_plan(code: ArrayCode, failed: int, helpers: Optional[Sequence[int]] = None) -> RepairPlan:
    """Full download of alpha symbols from the first k helpers"""
    code._check_node(failed)
    pool = sorted(helpers) if helpers is not None else [j for j in range(1, code.n + 1) if j != failed]
    if len(pool) < code.k:
        raise ParameterError(f"trivial repair needs {code.k} helpers, got {len(pool)}")
    chosen = pool[: code.k]
    identity = code.base.Identity(code.alpha)
    plan = _complete(code, failed, chosen, {h: identity for h in chosen}, "trivial")
    if plan is None:
        raise PlanSearchError(f"{code.name}: block columns {chosen} are singular")
    return plan


def _row_selection(code: ArrayCode, failed: int, helpers: List[int]) -> Optional[RepairPlan]:
    alpha, beta = code.alpha, code.beta
    selections = []
    for rows in itertools.combinations(range(alpha), beta):
        V = code.base.Zeros((alpha, beta))
        for col, row in enumerate(rows):
            V[row, col] = 1
        selections.append(V)
    for choice in itertools.product(selections, repeat=len(helpers)):
        plan = _complete(code, failed, helpers, dict(zip(helpers, choice)), "row_selection")
        if plan is not None:
            return plan
    return None


class _AlignedSearch:
    """Checks candidate parity subspaces in coordinates where the failed node is systematic"""

    def __init__(self, code: ArrayCode, failed: int, helpers: List[int]):
        self.code = code
        self.failed = failed
        self.helpers = helpers
        self.systematic = [failed] + helpers[: code.k - 1]
        self.parities = [h for h in helpers if h not in self.systematic]
        rebase = np.linalg.inv(code.columns(self.systematic))
        self.generator = rebase @ code.generator

    def block(self, i: int, node: int):
        a = self.code.alpha
        return self.generator[i * a:(i + 1) * a, (node - 1) * a: node * a]

    def attempt(self, assignment: Dict[int, object], strategy: str) -> Optional[RepairPlan]:
        code = self.code
        seen = np.hstack([self.block(0, p) @ assignment[p] for p in self.parities])
        if int(np.linalg.matrix_rank(seen)) != code.alpha:
            return None
        downloads = dict(assignment)
        for i, node in enumerate(self.systematic[1:], start=1):
            interference = column_space_basis(
                np.hstack([self.block(i, p) @ assignment[p] for p in self.parities])
            )
            if interference.shape[1] > code.beta:
                return None
            downloads[node] = interference
        return _complete(code, self.failed, self.helpers, downloads, strategy)

    def search(self, candidates: List, strategy: str) -> Optional[RepairPlan]:
        for V in candidates:
            plan = self.attempt({p: V for p in self.parities}, strategy)
            if plan is not None:
                return plan
        if len(candidates) ** len(self.parities) > config.SUBSPACE_ENUM_CAP:
            return None
        for choice in itertools.product(candidates, repeat=len(self.parities)):
            if all(c is choice[0] for c in choice):
                continue
            plan = self.attempt(dict(zip(self.parities, choice)), strategy)
            if plan is not None:
                return plan
        return None


def _random_search(search: _AlignedSearch) -> Optional[RepairPlan]:
    code = search.code
    rng = np.random.default_rng([search.failed, code.n, code.k, code.alpha])
    for _ in range(config.PLAN_RANDOM_TRIALS):
        assignment = {}
        for p in search.parities:
            V = code.base.Random((code.alpha, code.beta), seed=rng)
            if int(np.linalg.matrix_rank(V)) != code.beta:
                break
            assignment[p] = V
        else:
            plan = search.attempt(assignment, "random")
            if plan is not None:
                return plan
    return None


def ac_find_repair_plan(code: ArrayCode, failed: int, helpers: Optional[Sequence[int]] = None) -> RepairPlan:
    """
    Verified repair plan with per-helper download beta when one is found,
    otherwise the full-download plan.
    """
    code._check_node(failed)
    if helpers is None:
        helpers = [j for j in range(1, code.n + 1) if j != failed]
    helpers = sorted(helpers)
    if failed in helpers:
        raise ParameterError("the failed node cannot help its own repair")
    if len(helpers) != code.d or code.d != code.n - 1:
        logger.info(f"{code.name}: {len(helpers)} helpers for node {failed}, using full download")
        return ac_trivial_plan(code, failed, helpers)

    selections = comb(code.alpha, code.beta) ** len(helpers)
    if selections <= config.SUBSPACE_ENUM_CAP:
        plan = _row_selection(code, failed, helpers)
        if plan is not None:
            logger.info(f"{code.name}: node {failed} repaired by row selection, {plan.bandwidth} symbols")
            return plan

    search = _AlignedSearch(code, failed, helpers)
    if gaussian_binomial(code.alpha, code.beta, code.q) <= config.SUBSPACE_ENUM_CAP:
        candidates = list(enumerate_subspaces(code.base, code.alpha, code.beta))
    else:
        candidates = structured_subspaces(code.base, code.alpha, code.beta)
    plan = search.search(candidates, "aligned_subspace")
    if plan is None:
        logger.debug(f"{code.name}: no aligned subspace for node {failed}, trying random search")
        plan = _random_search(search)
    if plan is not None:
        logger.info(f"{code.name}: node {failed} repaired by {plan.strategy}, {plan.bandwidth} symbols")
        return plan

    logger.warning(
        f"{code.name}: no optimal repair plan for node {failed}; "
        f"falling back to full download of {code.k * code.alpha} symbols"
    )
    return ac_trivial_plan(code, failed, helpers)
