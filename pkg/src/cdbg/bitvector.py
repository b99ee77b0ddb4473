"""Plain bit vectors with constant-time rank and logarithmic select.

Bits are packed little-endian into 64-bit words. The rank directory is
two-level: a cumulative count per superblock of 8 words (512 bits) and a
16-bit count per word relative to its superblock.

The jitted kernels below work on raw 0-based bit positions and are shared
by the wavelet tree. :class:`RankBitVector` is the 1-based public face.
"""

from __future__ import annotations

import numpy as np
from numba import njit

WORD_BITS = 64
WORDS_PER_SUPER = 8

_M1 = np.uint64(0x5555555555555555)
_M2 = np.uint64(0x3333333333333333)
_M4 = np.uint64(0x0F0F0F0F0F0F0F0F)
_H01 = np.uint64(0x0101010101010101)
_ONE = np.uint64(1)
_ZERO = np.uint64(0)


@njit(cache=True, inline="always")
def popcount64(x):
    x = x - ((x >> np.uint64(1)) & _M1)
    x = (x & _M2) + ((x >> np.uint64(2)) & _M2)
    x = (x + (x >> np.uint64(4))) & _M4
    return np.int64((x * _H01) >> np.uint64(56))


@njit(cache=True, inline="always")
def _select_in_word(x, q):
    # position of the q-th (1-based) set bit of x
    for _ in range(q - 1):
        x = x & (x - _ONE)
    low = x & (~x + _ONE)
    return popcount64(low - _ONE)


@njit(cache=True)
def build_directory(words):
    nwords = words.shape[0]
    nsup = nwords // WORDS_PER_SUPER + 1
    supers = np.zeros(nsup, dtype=np.int64)
    blocks = np.zeros(nwords, dtype=np.uint16)
    total = 0
    rel = 0
    for w in range(nwords):
        if w % WORDS_PER_SUPER == 0:
            supers[w // WORDS_PER_SUPER] = total
            rel = 0
        blocks[w] = rel
        c = popcount64(words[w])
        rel += c
        total += c
    if nwords % WORDS_PER_SUPER == 0:
        supers[nsup - 1] = total
    return supers, blocks


@njit(cache=True, inline="always")
def rank_excl(words, supers, blocks, p):
    """Number of ones in raw positions [0, p)."""
    w = p >> 6
    r = supers[w >> 3] + np.int64(blocks[w])
    rem = p & 63
    if rem:
        r += popcount64(words[w] & ((_ONE << np.uint64(rem)) - _ONE))
    return r


@njit(cache=True, inline="always")
def get_bit(words, p):
    return np.int64((words[p >> 6] >> np.uint64(p & 63)) & _ONE)


@njit(cache=True)
def select1(words, supers, blocks, q):
    """Raw position of the q-th one (q >= 1)."""
    lo = 0
    hi = supers.shape[0] - 1
    # largest superblock s with supers[s] < q
    while lo < hi:
        mid = (lo + hi + 1) >> 1
        if supers[mid] < q:
            lo = mid
        else:
            hi = mid - 1
    acc = supers[lo]
    w = lo * WORDS_PER_SUPER
    while True:
        c = popcount64(words[w])
        if acc + c >= q:
            return w * WORD_BITS + _select_in_word(words[w], q - acc)
        acc += c
        w += 1


@njit(cache=True)
def select0(words, supers, blocks, q):
    """Raw position of the q-th zero (q >= 1)."""
    lo = 0
    hi = supers.shape[0] - 1
    while lo < hi:
        mid = (lo + hi + 1) >> 1
        if mid * WORDS_PER_SUPER * WORD_BITS - supers[mid] < q:
            lo = mid
        else:
            hi = mid - 1
    acc = lo * WORDS_PER_SUPER * WORD_BITS - supers[lo]
    w = lo * WORDS_PER_SUPER
    while True:
        inv = ~words[w]
        c = popcount64(inv)
        if acc + c >= q:
            return w * WORD_BITS + _select_in_word(inv, q - acc)
        acc += c
        w += 1


def pack_bits(bits: np.ndarray) -> np.ndarray:
    """Pack a 0/1 array into little-endian uint64 words with one spare word."""
    bits = np.asarray(bits, dtype=np.uint8)
    nwords = len(bits) // WORD_BITS + 1
    packed = np.packbits(bits, bitorder="little")
    buf = np.zeros(nwords * 8, dtype=np.uint8)
    buf[: len(packed)] = packed
    return buf.view("<u8").astype(np.uint64, copy=False)


def unpack_bits(words: np.ndarray, nbits: int) -> np.ndarray:
    raw = np.ascontiguousarray(words, dtype="<u8").view(np.uint8)
    return np.unpackbits(raw, bitorder="little")[:nbits]


class RankBitVector:
    """A length-``n`` bit vector addressed 1..n with ``rank1``.

    ``rank1(i)`` counts the ones in positions ``1..i``; ``rank1(0) == 0``.
    Raw bit 0 of the underlying storage is always zero so that 1-based
    positions index the words directly.
    """

    __slots__ = ("n", "words", "supers", "blocks")

    def __init__(self, n: int, words: np.ndarray):
        self.n = int(n)
        self.words = np.ascontiguousarray(words, dtype=np.uint64)
        self.supers, self.blocks = build_directory(self.words)

    @classmethod
    def from_raw(cls, raw: np.ndarray, n: int | None = None) -> "RankBitVector":
        """Build from an array indexed by position (``raw[0]`` is ignored)."""
        raw = np.array(raw, dtype=np.uint8, copy=True)
        if n is None:
            n = len(raw) - 1
        raw = raw[: n + 1]
        raw[0] = 0
        return cls(n, pack_bits(raw))

    @classmethod
    def from_bits(cls, bits) -> "RankBitVector":
        """Build from a sequence whose element ``j`` is the bit at position ``j+1``."""
        bits = np.asarray(bits, dtype=np.uint8)
        raw = np.zeros(len(bits) + 1, dtype=np.uint8)
        raw[1:] = bits
        return cls(len(bits), pack_bits(raw))

    @classmethod
    def from_positions(cls, n: int, positions) -> "RankBitVector":
        raw = np.zeros(n + 1, dtype=np.uint8)
        pos = np.asarray(list(positions) if not isinstance(positions, np.ndarray) else positions,
                         dtype=np.int64)
        if pos.size:
            if pos.min() < 1 or pos.max() > n:
                raise IndexError("bit position out of range")
            raw[pos] = 1
        return cls(n, pack_bits(raw))

    def __len__(self) -> int:
        return self.n

    def __getitem__(self, i: int) -> int:
        if not 1 <= i <= self.n:
            raise IndexError(i)
        return int(get_bit(self.words, i))

    def rank1(self, i: int) -> int:
        if not 0 <= i <= self.n:
            raise IndexError(i)
        return int(rank_excl(self.words, self.supers, self.blocks, i + 1))

    def count(self) -> int:
        return self.rank1(self.n)

    def ones(self) -> np.ndarray:
        """Ascending 1-based positions of the set bits."""
        return np.flatnonzero(self.to_array()) + 1

    def to_array(self) -> np.ndarray:
        """Bits at positions 1..n as a uint8 array of length n."""
        return unpack_bits(self.words, self.n + 1)[1:].copy()

    def __eq__(self, other) -> bool:
        if not isinstance(other, RankBitVector):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.to_array(), other.to_array())

    def __repr__(self) -> str:
        return f"RankBitVector(n={self.n}, ones={self.count()})"
