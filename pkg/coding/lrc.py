"""
Locally repairable codes from Gabidulin codewords

Each of the m codeword symbols lives on its own node. Coordinates are split
into consecutive groups of r (plus a remainder group of j = m mod r), and every
group gets a parity node holding the sum of its symbols. Because evaluation is
F_q-linear the parity is f evaluated at the sum of the group's points, so any
surviving set of positions is again a set of evaluations of f.

Positions are 1-based: 1..m are codeword symbols, m+1..n the group parities.
"""

import itertools
import logging
from collections import UserDict
from math import ceil
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from config import config
from .errors import ParameterError, RepairError
from .ff import expand, get_field, rank_over_base
from .gabidulin import DecodeFailure, GabidulinCode, gab_decode_at, gab_encode

logger = logging.getLogger(__name__)


class LocalRepairError(RepairError):
    """A member of the failed position's group is unavailable"""


class LrcCode:
    def __init__(self, base: GabidulinCode, r: int, groups: List[List[int]]):
        self.base = base
        self.r = r
        self.groups = groups

    @property
    def m(self) -> int:
        return self.base.m

    @property
    def k_out(self) -> int:
        return self.base.K

    @property
    def n(self) -> int:
        return self.m + len(self.groups)

    @property
    def delta(self) -> int:
        return self.base.delta

    def parity_position(self, group: int) -> int:
        return self.m + group + 1

    def group_of(self, position: int) -> int:
        """Index of the group a position belongs to"""
        if not 1 <= position <= self.n:
            raise ParameterError(f"position {position} outside [1, {self.n}]")
        if position > self.m:
            return position - self.m - 1
        for g, members in enumerate(self.groups):
            if position in members:
                return g
        raise ParameterError(f"position {position} is in no group")

    def __repr__(self):
        return f"LrcCode(m={self.m}, k={self.k_out}, r={self.r}, n={self.n})"


def lrc_build(m: int, k_out: int, r: int, N: Optional[int] = None, q: Optional[int] = None) -> LrcCode:
    """
    Consecutive groups of r coordinates, plus a remainder group when m = k_out (mod r)

    Supported layouts: r < k_out < m <= N, and either r divides m (e.g. m=8, k_out=6, r=4)
    or m mod r = k_out mod r, giving a shorter last group (e.g. m=7, k_out=4, r=3).
    Anything else, such as m=7, k_out=5, r=3, raises ParameterError.
    """
    N = N or m
    q = q or config.DEFAULT_Q
    if not k_out < m <= N:
        raise ParameterError(f"k_out < m <= N violated (k_out={k_out}, m={m}, N={N})")
    if not r < k_out:
        raise ParameterError(f"r < k_out violated (r={r}, k_out={k_out})")
    j = m % r
    if j and j != k_out % r:
        raise ParameterError(
            f"unsupported layout: need m = 0 (mod r) or m = k_out = j (mod r), "
            f"got m mod r = {j}, k_out mod r = {k_out % r}"
        )
    groups = [list(range(start + 1, min(start + r, m) + 1)) for start in range(0, m, r)]
    base = GabidulinCode(get_field(q, N), m, k_out)
    code = LrcCode(base, r, groups)
    logger.debug(f"Built {code} with groups {groups}")
    return code


def lrc_points(code: LrcCode):
    """Evaluation point of every position: g_i for symbols, the group sum for parities"""
    g = code.base.eval_points
    parities = [np.sum(g[[i - 1 for i in members]]) for members in code.groups]
    return np.concatenate((g, code.base.GF(parities)))


def lrc_encode(code: LrcCode, message):
    """[c_1 .. c_m, p_1 .. p_groups]"""
    codeword = gab_encode(code.base, message)
    parities = code.base.GF([np.sum(codeword[[i - 1 for i in members]]) for members in code.groups])
    return np.concatenate((codeword, parities))


class CountingSymbols(UserDict):
    """Symbol store that counts how many positions were read"""

    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self.reads = 0

    def __getitem__(self, key):
        self.reads += 1
        return super().__getitem__(key)


def lrc_local_repair(code: LrcCode, symbols: Dict[int, object], failed: int):
    """Rebuild one position from its group; reads the other |group| members only"""
    g = code.group_of(failed)
    members = code.groups[g] + [code.parity_position(g)]
    needed = [p for p in members if p != failed]
    missing = [p for p in needed if p not in symbols]
    if missing:
        raise LocalRepairError(f"positions {missing} of group {g + 1} are unavailable")
    total = code.base.GF(0)
    if failed == code.parity_position(g):
        for p in needed:
            total = total + symbols[p]
        return total
    for p in needed:
        if p != code.parity_position(g):
            total = total + symbols[p]
    return symbols[code.parity_position(g)] - total


def lrc_min_distance(n: int, k_out: int, r: int) -> int:
    """n - k + 2 - ceil(k/r)"""
    if not r < k_out < n:
        raise ParameterError(f"r < k_out < n violated (r={r}, k_out={k_out}, n={n})")
    return n - k_out + 2 - ceil(k_out / r)


def lrc_decode(code: LrcCode, received, erasures: Sequence[int] = ()) -> Union[object, DecodeFailure]:
    """
    Message from the surviving positions.

    Surviving positions are evaluations at known points; an F_q-independent
    subset of them (first in position order) is decoded as a Gabidulin code,
    so rank errors up to half its redundancy are corrected.
    """
    received = np.atleast_1d(received)
    if received.size != code.n:
        raise ParameterError(f"received word has length {received.size}, expected {code.n}")
    erased = set(erasures)
    surviving = [p for p in range(1, code.n + 1) if p not in erased]
    points = lrc_points(code)[[p - 1 for p in surviving]]
    if rank_over_base(points) < code.k_out:
        return DecodeFailure(
            f"only {rank_over_base(points)} independent positions survive, need {code.k_out}"
        )
    reduced = expand(points).row_reduce()
    pivots = sorted({int(np.flatnonzero(row)[0]) for row in reduced if np.any(row != 0)})
    values = received[[surviving[i] - 1 for i in pivots]]
    return gab_decode_at(points[pivots], values, code.k_out)


def lrc_worst_erasure_pattern(code: LrcCode, size: int) -> List[int]:
    """Erase groups whole, symbols before parity, in group order"""
    order = []
    for g, members in enumerate(code.groups):
        order.extend(members)
        order.append(code.parity_position(g))
    if size > len(order):
        raise ParameterError(f"cannot erase {size} of {code.n} positions")
    return order[:size]


def lrc_pollute_group(code: LrcCode, codeword, position: int, error):
    """
    Corrupt one position, then locally repair every other member of its group
    from a view in which only that position is corrupted. The result carries
    +-error on the whole group: Hamming weight |group|+1, rank one.
    """
    corrupted = np.atleast_1d(codeword).copy()
    corrupted[position - 1] += error
    word = corrupted.copy()
    g = code.group_of(position)
    for member in code.groups[g] + [code.parity_position(g)]:
        if member == position:
            continue
        available = {p: corrupted[p - 1] for p in range(1, code.n + 1) if p != member}
        word[member - 1] = lrc_local_repair(code, available, member)
    return word


def lrc_erasure_sweep(code: LrcCode, size: int, rng) -> Tuple[int, int, List[Tuple[int, ...]]]:
    """Decode one random codeword under every erasure pattern of the given size"""
    message = code.base.field.random(code.k_out, rng)
    codeword = lrc_encode(code, message)
    decoded, total, failures = 0, 0, []
    for pattern in itertools.combinations(range(1, code.n + 1), size):
        total += 1
        result = lrc_decode(code, codeword, pattern)
        if not isinstance(result, DecodeFailure) and np.array_equal(result, message):
            decoded += 1
        else:
            failures.append(pattern)
    logger.info(f"{code}: {decoded}/{total} patterns of {size} erasures decoded")
    return decoded, total, failures
