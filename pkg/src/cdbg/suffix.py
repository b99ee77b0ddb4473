"""Suffix array, BWT and document array of the concatenated text.

The suffix array is built by induced sorting (SA-IS). Each recursion level
runs two jitted passes; the recursion on the reduced LMS string is driven
from Python.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numba import njit

from .sequence_store import SENTINEL, Text


@njit(cache=True)
def _classify(T):
    n = T.shape[0]
    stype = np.zeros(n, dtype=np.uint8)
    stype[n - 1] = 1
    for i in range(n - 2, -1, -1):
        if T[i] < T[i + 1] or (T[i] == T[i + 1] and stype[i + 1] == 1):
            stype[i] = 1
    return stype


@njit(cache=True, inline="always")
def _is_lms(stype, i):
    return i > 0 and stype[i] == 1 and stype[i - 1] == 0


@njit(cache=True)
def _bucket_bounds(T, K, ends):
    cnt = np.zeros(K, dtype=np.int64)
    for i in range(T.shape[0]):
        cnt[T[i]] += 1
    out = np.empty(K, dtype=np.int64)
    s = 0
    for c in range(K):
        s += cnt[c]
        out[c] = s if ends else s - cnt[c]
    return out


@njit(cache=True)
def _induce(T, K, stype, SA):
    n = T.shape[0]
    bkt = _bucket_bounds(T, K, False)
    for i in range(n):
        j = SA[i] - 1
        if SA[i] > 0 and stype[j] == 0:
            SA[bkt[T[j]]] = j
            bkt[T[j]] += 1
    bkt = _bucket_bounds(T, K, True)
    for i in range(n - 1, -1, -1):
        j = SA[i] - 1
        if SA[i] > 0 and stype[j] == 1:
            bkt[T[j]] -= 1
            SA[bkt[T[j]]] = j


@njit(cache=True)
def _reduce(T, K):
    """Sort LMS substrings and name them; return the reduced problem."""
    n = T.shape[0]
    stype = _classify(T)
    SA = np.full(n, -1, dtype=np.int64)
    bkt = _bucket_bounds(T, K, True)
    for i in range(1, n):
        if _is_lms(stype, i):
            bkt[T[i]] -= 1
            SA[bkt[T[i]]] = i
    _induce(T, K, stype, SA)

    n1 = 0
    for i in range(n):
        if _is_lms(stype, SA[i]):
            SA[n1] = SA[i]
            n1 += 1
    for i in range(n1, n):
        SA[i] = -1
    name = 0
    prev = -1
    for i in range(n1):
        pos = SA[i]
        diff = False
        d = 0
        while True:
            if prev == -1 or T[pos + d] != T[prev + d] or stype[pos + d] != stype[prev + d]:
                diff = True
                break
            if d > 0 and (_is_lms(stype, pos + d) or _is_lms(stype, prev + d)):
                break
            d += 1
        if diff:
            name += 1
            prev = pos
        SA[n1 + pos // 2] = name - 1

    reduced = np.empty(n1, dtype=np.int64)
    j = 0
    for i in range(n1, n):
        if SA[i] >= 0:
            reduced[j] = SA[i]
            j += 1
    lms = np.empty(n1, dtype=np.int64)
    j = 0
    for i in range(1, n):
        if _is_lms(stype, i):
            lms[j] = i
            j += 1
    return reduced, name, lms, stype


@njit(cache=True)
def _expand(T, K, stype, lms, sa1):
    n = T.shape[0]
    SA = np.full(n, -1, dtype=np.int64)
    bkt = _bucket_bounds(T, K, True)
    for i in range(sa1.shape[0] - 1, -1, -1):
        j = lms[sa1[i]]
        bkt[T[j]] -= 1
        SA[bkt[T[j]]] = j
    _induce(T, K, stype, SA)
    return SA


def sais(T: np.ndarray, K: int) -> np.ndarray:
    """0-based suffix array of ``T``; ``T[-1]`` must be the unique minimum 0."""
    n = len(T)
    if n == 1:
        return np.zeros(1, dtype=np.int64)
    reduced, names, lms, stype = _reduce(T, K)
    if names < len(reduced):
        sa1 = sais(reduced, names)
    else:
        sa1 = np.empty(len(reduced), dtype=np.int64)
        sa1[reduced] = np.arange(len(reduced), dtype=np.int64)
    return _expand(T, K, stype, lms, sa1)


@dataclass(frozen=True, eq=False)
class SuffixArray:
    """``sa[i-1]`` is the 1-based text position of the i-th smallest suffix."""

    sa: np.ndarray

    def __len__(self) -> int:
        return len(self.sa)

    def __getitem__(self, i: int) -> int:
        """1-based SA lookup, ``SA[i]``."""
        if not 1 <= i <= len(self.sa):
            raise IndexError(i)
        return int(self.sa[i - 1])

    def tolist(self) -> list[int]:
        return self.sa.tolist()


@dataclass(frozen=True, eq=False)
class BwtString:
    bwt: np.ndarray  # uint8 codes, bwt[i-1] = BWT[i]

    def __len__(self) -> int:
        return len(self.bwt)

    def tolist(self) -> list[int]:
        return self.bwt.tolist()


@dataclass(frozen=True, eq=False)
class DocumentArray:
    doc: np.ndarray  # int64, doc[i-1] = D[i] in 1..d

    def __len__(self) -> int:
        return len(self.doc)

    def tolist(self) -> list[int]:
        return self.doc.tolist()


def build_suffix_array(text: Text) -> SuffixArray:
    sa = sais(text.codes, max(text.sigma, 1))
    return SuffixArray(sa + 1)


def build_bwt(text: Text, sa: SuffixArray) -> BwtString:
    # cyclic predecessor: position 1 is preceded by the sentinel at n
    bwt = text.codes[(sa.sa - 2) % text.n]
    assert text.codes[-1] == SENTINEL
    return BwtString(np.ascontiguousarray(bwt, dtype=np.uint8))


def build_document_array(sa: SuffixArray, text: Text) -> DocumentArray:
    doc = np.searchsorted(text.doc_ends, sa.sa, side="left") + 1
    return DocumentArray(doc.astype(np.int64))
