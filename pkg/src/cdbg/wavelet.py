"""Balanced wavelet tree stored level by level.

Codes are padded to ``2**levels``; the node for a bit prefix ``p`` at depth
``l`` covers codes ``[p << (levels-l), (p+1) << (levels-l))`` and occupies
positions ``[counts[p << s], counts[(p+1) << s])`` of that level's bit
vector, where ``counts[c]`` is the number of symbols smaller than ``c``.
One concatenated bit vector per level therefore holds every node of that
depth, each node a contiguous slice with its own rank via differences.

Positions in this module are 0-based; the FM-index adds the 1-based layer.
The kernels take the tuple ``(bits, supers, blocks, counts)``.
"""

from __future__ import annotations

import numpy as np
from numba import njit

from .bitvector import build_directory, get_bit, pack_bits, rank_excl, select0, select1


def levels_for(sigma: int) -> int:
    return max(1, int(sigma - 1).bit_length())


@njit(cache=True)
def _level_bits(codes, levels):
    """Bit matrix (levels x n) in wavelet order plus per-code counts."""
    n = codes.shape[0]
    width = 1 << levels
    counts = np.zeros(width + 1, dtype=np.int64)
    for x in range(n):
        counts[codes[x] + 1] += 1
    for c in range(width):
        counts[c + 1] += counts[c]
    out = np.zeros((levels, n), dtype=np.uint8)
    cur = codes.astype(np.int64)
    nxt = np.empty(n, dtype=np.int64)
    for l in range(levels):
        shift = levels - 1 - l
        for x in range(n):
            out[l, x] = (cur[x] >> shift) & 1
        if l == levels - 1:
            break
        # stable counting sort by the (l+1)-bit prefix
        fill = np.empty(1 << (l + 1), dtype=np.int64)
        for p in range(1 << (l + 1)):
            fill[p] = counts[p << shift]
        for x in range(n):
            p = cur[x] >> shift
            nxt[fill[p]] = cur[x]
            fill[p] += 1
        cur, nxt = nxt, cur
    return out, counts


@njit(cache=True)
def wt_rank(wt, c, i):
    """Occurrences of code ``c`` in ``seq[0:i]``."""
    bits, supers, blocks, counts = wt
    levels = bits.shape[0]
    for l in range(levels):
        shift = levels - l
        start = counts[(c >> shift) << shift]
        r0 = rank_excl(bits[l], supers[l], blocks[l], start)
        ones = rank_excl(bits[l], supers[l], blocks[l], start + i) - r0
        if (c >> (shift - 1)) & 1:
            i = ones
        else:
            i = i - ones
    return i


@njit(cache=True)
def wt_access_rank(wt, x):
    """``(seq[x], occurrences of seq[x] in seq[0:x])``."""
    bits, supers, blocks, counts = wt
    levels = bits.shape[0]
    p = 0
    i = x
    for l in range(levels):
        shift = levels - l
        start = counts[p << shift]
        bit = get_bit(bits[l], start + i)
        ones = rank_excl(bits[l], supers[l], blocks[l], start + i) - rank_excl(
            bits[l], supers[l], blocks[l], start
        )
        if bit:
            i = ones
        else:
            i = i - ones
        p = 2 * p + bit
    return p, i


@njit(cache=True)
def wt_select(wt, c, q):
    """0-based position of the ``q``-th (1-based) occurrence of ``c``."""
    bits, supers, blocks, counts = wt
    levels = bits.shape[0]
    j = q - 1
    for l in range(levels - 1, -1, -1):
        shift = levels - l
        start = counts[(c >> shift) << shift]
        r0 = rank_excl(bits[l], supers[l], blocks[l], start)
        if (c >> (shift - 1)) & 1:
            pos = select1(bits[l], supers[l], blocks[l], r0 + j + 1)
        else:
            pos = select0(bits[l], supers[l], blocks[l], start - r0 + j + 1)
        j = pos - start
    return j


@njit(cache=True)
def wt_intervals(wt, a, b, out_c, out_a, out_b):
    """List every code in ``seq[a:b]`` with its rank range ``[ra, rb)``.

    Splits the interval down the tree, visiting only non-empty nodes, and
    reports codes in ascending order. Returns the number of entries.
    """
    bits, supers, blocks, counts = wt
    levels = bits.shape[0]
    st_l = np.empty(2 * levels + 2, dtype=np.int64)
    st_p = np.empty(2 * levels + 2, dtype=np.int64)
    st_a = np.empty(2 * levels + 2, dtype=np.int64)
    st_b = np.empty(2 * levels + 2, dtype=np.int64)
    sp = 0
    cnt = 0
    if b <= a:
        return 0
    st_l[0] = 0
    st_p[0] = 0
    st_a[0] = a
    st_b[0] = b
    sp = 1
    while sp > 0:
        sp -= 1
        l = st_l[sp]
        p = st_p[sp]
        a = st_a[sp]
        b = st_b[sp]
        if l == levels:
            out_c[cnt] = p
            out_a[cnt] = a
            out_b[cnt] = b
            cnt += 1
            continue
        shift = levels - l
        start = counts[p << shift]
        r0 = rank_excl(bits[l], supers[l], blocks[l], start)
        oa = rank_excl(bits[l], supers[l], blocks[l], start + a) - r0
        ob = rank_excl(bits[l], supers[l], blocks[l], start + b) - r0
        za = a - oa
        zb = b - ob
        if ob > oa:
            st_l[sp] = l + 1
            st_p[sp] = 2 * p + 1
            st_a[sp] = oa
            st_b[sp] = ob
            sp += 1
        if zb > za:
            st_l[sp] = l + 1
            st_p[sp] = 2 * p
            st_a[sp] = za
            st_b[sp] = zb
            sp += 1
    return cnt


@njit(cache=True)
def wt_decode(wt, n):
    out = np.empty(n, dtype=np.int64)
    for x in range(n):
        c, _ = wt_access_rank(wt, x)
        out[x] = c
    return out


class WaveletTree:
    """Wavelet tree over an integer sequence with codes in ``[0, sigma)``."""

    def __init__(self, n: int, sigma: int, words: np.ndarray, counts: np.ndarray):
        self.n = int(n)
        self.sigma = int(sigma)
        self.words = np.ascontiguousarray(words, dtype=np.uint64)
        self.counts = np.ascontiguousarray(counts, dtype=np.int64)
        self.levels = self.words.shape[0]
        dirs = [build_directory(self.words[l]) for l in range(self.levels)]
        self.supers = np.ascontiguousarray(np.stack([s for s, _ in dirs]))
        self.blocks = np.ascontiguousarray(np.stack([b for _, b in dirs]))
        self.arrays = (self.words, self.supers, self.blocks, self.counts)

    @classmethod
    def build(cls, codes: np.ndarray, sigma: int) -> "WaveletTree":
        codes = np.asarray(codes)
        if codes.size and (codes.min() < 0 or codes.max() >= sigma):
            raise ValueError("code out of range")
        levels = levels_for(sigma)
        bits, counts = _level_bits(codes, levels)
        words = np.stack([pack_bits(bits[l]) for l in range(levels)])
        return cls(len(codes), sigma, words, counts)

    def __len__(self) -> int:
        return self.n

    def access(self, x: int) -> int:
        return int(wt_access_rank(self.arrays, x)[0])

    def rank(self, c: int, i: int) -> int:
        if not 0 <= c < self.sigma:
            return 0
        return int(wt_rank(self.arrays, c, i))

    def select(self, c: int, q: int) -> int:
        return int(wt_select(self.arrays, c, q))

    def intervals(self, a: int, b: int) -> list[tuple[int, int, int]]:
        """``[(c, ra, rb)]`` for each code in ``seq[a:b]``, ascending by code."""
        width = 1 << self.levels
        oc, oa, ob = (np.empty(width, dtype=np.int64) for _ in range(3))
        cnt = wt_intervals(self.arrays, a, b, oc, oa, ob)
        return [(int(oc[t]), int(oa[t]), int(ob[t])) for t in range(cnt)]

    def decode(self) -> np.ndarray:
        return wt_decode(self.arrays, self.n)
