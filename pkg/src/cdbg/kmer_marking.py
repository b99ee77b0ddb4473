"""Right-maximal k-mer intervals and the B_r / B_l bit vectors.

The LCP array is never materialised. Instead the BWT-based interval queue
computes LCP entries level by level for levels 0..k, so each entry is only
classified as ``< k`` (0), ``== k`` (1) or ``> k`` (2). The queue is seeded
with one singleton interval per separator occurrence, which makes distinct
separators compare unequal.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numba import njit

from .bitvector import RankBitVector
from .fm_index import FMIndex, fm_get_intervals
from .sequence_store import SEPARATOR

LESS, EQUAL, GREATER = 0, 1, 2


class InvalidParameter(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class TruncatedLcp:
    k: int
    l: np.ndarray  # uint8, length n+2; l[1..n+1] are meaningful, l[0] unused

    @property
    def n(self) -> int:
        return len(self.l) - 2

    def tolist(self) -> list[int]:
        """Classes at positions 1..n+1."""
        return self.l[1:].tolist()


@dataclass(frozen=True, eq=False)
class MarkVectors:
    b_r: RankBitVector
    b_l: RankBitVector
    right_max: int
    left_max: int

    @classmethod
    def from_graph(cls, g) -> "MarkVectors":
        """Recover both bit vectors from a finished implicit graph.

        Right-maximal nodes keep their k-mer interval in
        ``[suffix_lb, suffix_lb + size - 1]``; the other non-stop nodes keep
        the interval of their last k-mer, whose B_l mark is its right end.
        """
        rm, lm = g.right_max, g.left_max
        slb = g.suffix_lb[1 : rm + 1]
        size = g.size[1 : rm + 1]
        b_r = RankBitVector.from_positions(g.n, np.concatenate([slb, slb + size - 1]))
        ends = g.suffix_lb[rm + 1 : rm + lm + 1] + g.size[rm + 1 : rm + lm + 1] - 1
        b_l = RankBitVector.from_positions(g.n, ends)
        return cls(b_r, b_l, rm, lm)


def validate_k(k: int, fm: FMIndex) -> None:
    lengths = np.diff(np.concatenate([[0], fm.doc_ends])) - 1
    if k < 2:
        raise InvalidParameter("k must be >= 2")
    if k > int(lengths.min()):
        raise InvalidParameter(f"k must be <= the shortest sequence length ({int(lengths.min())})")


@njit(cache=True)
def _truncated_lcp(wt, n, d, k):
    width = wt[3].shape[0] - 1
    oc = np.empty(width, dtype=np.int64)
    oi = np.empty(width, dtype=np.int64)
    oj = np.empty(width, dtype=np.int64)
    L = np.full(n + 2, GREATER, dtype=np.uint8)
    L[0] = LESS
    L[1] = LESS
    L[n + 1] = LESS
    qa = np.empty(n + 2, dtype=np.int64)
    qb = np.empty(n + 2, dtype=np.int64)
    head = 0
    tail = 0

    cnt = fm_get_intervals(wt, 1, n, oc, oi, oj)
    for t in range(cnt):
        if oc[t] == SEPARATOR:
            for s in range(oi[t], oj[t] + 1):
                if L[s + 1] == GREATER:
                    L[s + 1] = LESS
                    qa[tail] = s
                    qb[tail] = s
                    tail += 1
        elif L[oj[t] + 1] == GREATER:
            L[oj[t] + 1] = LESS
            qa[tail] = oi[t]
            qb[tail] = oj[t]
            tail += 1

    level = 1
    while level <= k and head < tail:
        value = LESS if level < k else EQUAL
        level_end = tail
        while head < level_end:
            cnt = fm_get_intervals(wt, qa[head], qb[head], oc, oi, oj)
            head += 1
            for t in range(cnt):
                j = oj[t]
                if L[j + 1] == GREATER:
                    L[j + 1] = value
                    if level < k:
                        qa[tail] = oi[t]
                        qb[tail] = j
                        tail += 1
        level += 1
    return L


def truncated_lcp(fm: FMIndex, k: int) -> TruncatedLcp:
    if k < 2:
        raise InvalidParameter("k must be >= 2")
    return TruncatedLcp(k, _truncated_lcp(fm.wt, fm.n, fm.d, k))


@njit(cache=True)
def _alg1(bwt, counts, L, n, k):
    # bwt[1..n] = BWT, bwt[n+1] is a value no code takes
    C = counts.copy()
    br = np.zeros(n + 2, dtype=np.uint8)
    bl = np.zeros(n + 2, dtype=np.uint8)
    node_lb = np.empty(n // 2 + 1, dtype=np.int64)
    node_size = np.empty(n // 2 + 1, dtype=np.int64)
    count = 0
    lb = 1
    k_index = 0
    lastdiff = 0
    is_open = False
    for i in range(2, n + 2):
        C[bwt[i - 1]] += 1
        if L[i] != LESS:
            is_open = True
            if L[i] == EQUAL:
                k_index = i
        else:
            if is_open:
                if k_index > lb:
                    br[lb] = 1
                    br[i - 1] = 1
                    node_lb[count] = lb
                    node_size[count] = i - lb
                    count += 1
                if lastdiff > lb:
                    for j in range(lb, i):
                        c = bwt[j]
                        if c > SEPARATOR:
                            bl[C[c]] = 1
                is_open = False
            lb = i
        if bwt[i] != bwt[i - 1]:
            lastdiff = i

    is_open = False
    for i in range(1, n + 2):
        if is_open:
            bl[i] = 0
            if br[i] == 1:
                is_open = False
        elif br[i] == 1:
            bl[i] = 0
            is_open = True
    return br, bl, node_lb[:count], node_size[:count]


def create_bit_vectors(k: int, fm: FMIndex, lcp: TruncatedLcp, bwt: np.ndarray | None = None):
    """Mark right-maximal k-mer intervals (B_r) and predecessors of
    left-maximal k-mers (B_l).

    Returns ``(marks, initial, queue)``: ``initial`` holds one
    ``(len, lb, size, suffix_lb)`` row per right-maximal k-mer in ascending
    ``lb`` order (ids 1..right_max), and ``queue`` lists those ids.
    """
    if lcp.k != k:
        raise InvalidParameter("truncated LCP was computed for a different k")
    n = fm.n
    padded = np.empty(n + 2, dtype=np.uint8)
    padded[0] = 255
    padded[1 : n + 1] = fm.bwt() if bwt is None else bwt
    padded[n + 1] = 255
    br, bl, lbs, sizes = _alg1(padded, fm.wavelet.counts, lcp.l, n, k)
    b_r = RankBitVector.from_raw(br, n)
    b_l = RankBitVector.from_raw(bl, n)
    marks = MarkVectors(b_r, b_l, b_r.count() // 2, b_l.count())
    initial = np.stack([np.full(len(lbs), k, dtype=np.int64), lbs, sizes, lbs], axis=1)
    queue = list(range(1, len(lbs) + 1))
    return marks, initial, queue
