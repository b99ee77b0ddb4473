"""FM-index over the BWT of the concatenated text.

All SA indices and text positions at this layer are 1-based. An interval
``(i, j)`` with ``i > j`` is empty.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numba import njit

from .sequence_store import SENTINEL, SEPARATOR, Text
from .suffix import BwtString, SuffixArray, build_bwt, build_document_array, build_suffix_array
from .wavelet import WaveletTree, wt_access_rank, wt_intervals, wt_rank, wt_select

DEFAULT_SAMPLE_RATE = 32


@njit(cache=True)
def fm_backward_search(wt, c, lb, rb):
    counts = wt[3]
    return (counts[c] + wt_rank(wt, c, lb - 1) + 1, counts[c] + wt_rank(wt, c, rb))


@njit(cache=True)
def fm_lf(wt, i):
    c, r = wt_access_rank(wt, i - 1)
    return wt[3][c] + r + 1


@njit(cache=True)
def fm_lf_char(wt, i):
    """``(BWT[i], LF(i))`` from a single descent."""
    c, r = wt_access_rank(wt, i - 1)
    return c, wt[3][c] + r + 1


@njit(cache=True)
def fm_first_char(counts, i):
    # code c with counts[c] < i <= counts[c+1]
    lo = 0
    hi = counts.shape[0] - 2
    while lo < hi:
        mid = (lo + hi + 1) >> 1
        if counts[mid] < i:
            lo = mid
        else:
            hi = mid - 1
    return lo


@njit(cache=True)
def fm_psi(wt, i):
    counts = wt[3]
    c = fm_first_char(counts, i)
    return wt_select(wt, c, i - counts[c]) + 1


@njit(cache=True)
def fm_locate(wt, samples, rate, d, n, i):
    steps = 0
    while i > d and (i - 1) % rate != 0:
        i = fm_lf(wt, i)
        steps += 1
    if i <= d:
        v = samples[i - 1]
    else:
        v = samples[d + (i - 1) // rate]
    return (v + steps - 1) % n + 1


@njit(cache=True)
def fm_locate_range(wt, samples, rate, d, n, lb, rb):
    out = np.empty(max(rb - lb + 1, 0), dtype=np.int64)
    for i in range(lb, rb + 1):
        out[i - lb] = fm_locate(wt, samples, rate, d, n, i)
    return out


@njit(cache=True)
def fm_search(wt, pattern, n):
    """SA interval of a coded pattern; codes < 0 never occur."""
    lb = 1
    rb = n
    for t in range(pattern.shape[0] - 1, -1, -1):
        c = pattern[t]
        if c < 0 or c >= wt[3].shape[0] - 1:
            return 1, 0
        lb, rb = fm_backward_search(wt, c, lb, rb)
        if lb > rb:
            return lb, rb
    return lb, rb


@njit(cache=True)
def fm_invert(wt, n):
    """Recover the text codes by iterating LF from the sentinel suffix."""
    out = np.empty(n, dtype=np.uint8)
    out[n - 1] = 0
    i = 1
    for pos in range(n - 2, -1, -1):
        c, i = fm_lf_char(wt, i)
        out[pos] = c
    return out


@njit(cache=True)
def fm_extract(wt, i, length):
    """Codes of the ``length`` characters starting at suffix ``SA[i]``."""
    out = np.empty(length, dtype=np.uint8)
    for t in range(length):
        out[t] = fm_first_char(wt[3], i)
        if t + 1 < length:
            i = fm_psi(wt, i)
    return out


@njit(cache=True)
def fm_get_intervals(wt, lb, rb, out_c, out_i, out_j):
    counts = wt[3]
    cnt = wt_intervals(wt, lb - 1, rb, out_c, out_i, out_j)
    for t in range(cnt):
        c = out_c[t]
        out_i[t] = counts[c] + out_i[t] + 1
        out_j[t] = counts[c] + out_j[t]
    return cnt


def sample_suffix_array(sa: np.ndarray, d: int, rate: int) -> np.ndarray:
    """SA values at indices 1..d followed by those at 1, 1+rate, 1+2*rate, ..."""
    return np.concatenate([sa[:d], sa[::rate]]).astype(np.int64)


@dataclass(eq=False)
class FMIndex:
    wavelet: WaveletTree
    samples: np.ndarray
    sample_rate: int
    alphabet: dict[str, int]
    doc_ends: np.ndarray
    names: tuple[str, ...]
    documents: WaveletTree | None = None

    @classmethod
    def build(cls, text: Text, sa: SuffixArray | None = None, bwt: BwtString | None = None,
              sample_rate: int = DEFAULT_SAMPLE_RATE) -> "FMIndex":
        if sample_rate < 1:
            raise ValueError("sample rate must be >= 1")
        if sa is None:
            sa = build_suffix_array(text)
        if bwt is None:
            bwt = build_bwt(text, sa)
        wavelet = WaveletTree.build(bwt.bwt, text.sigma)
        doc = build_document_array(sa, text)
        documents = WaveletTree.build(doc.doc - 1, text.d)
        return cls(
            wavelet=wavelet,
            samples=sample_suffix_array(sa.sa, text.d, sample_rate),
            sample_rate=sample_rate,
            alphabet=dict(text.alphabet),
            doc_ends=np.asarray(text.doc_ends, dtype=np.int64),
            names=tuple(text.names),
            documents=documents,
        )

    @property
    def n(self) -> int:
        return self.wavelet.n

    @property
    def sigma(self) -> int:
        return self.wavelet.sigma

    @property
    def d(self) -> int:
        return len(self.doc_ends)

    @property
    def wt(self):
        return self.wavelet.arrays

    @property
    def c_array(self) -> np.ndarray:
        """``C[c]`` for c in 0..sigma, with the virtual end entry ``C[sigma] = n``."""
        return self.wavelet.counts[: self.sigma + 1].copy()

    @property
    def symbols(self) -> list[str]:
        out = [""] * self.sigma
        for ch, code in self.alphabet.items():
            out[code] = ch
        return out

    def is_terminator(self, c: int) -> bool:
        return c == SENTINEL or c == SEPARATOR

    def access(self, i: int) -> int:
        """``BWT[i]``."""
        self._check(i)
        return int(wt_access_rank(self.wt, i - 1)[0])

    def bwt(self) -> np.ndarray:
        return self.wavelet.decode().astype(np.uint8)

    def backward_search(self, c: int, lb: int, rb: int) -> tuple[int, int]:
        if lb > rb or not 0 <= c < self.sigma:
            return (1, 0)
        i, j = fm_backward_search(self.wt, c, lb, rb)
        return int(i), int(j)

    def get_intervals(self, lb: int, rb: int) -> list[tuple[int, tuple[int, int]]]:
        if lb > rb:
            return []
        width = 1 << self.wavelet.levels
        oc, oi, oj = (np.empty(width, dtype=np.int64) for _ in range(3))
        cnt = fm_get_intervals(self.wt, lb, rb, oc, oi, oj)
        return [(int(oc[t]), (int(oi[t]), int(oj[t]))) for t in range(cnt)]

    def lf(self, i: int) -> int:
        self._check(i)
        return int(fm_lf(self.wt, i))

    def psi(self, i: int) -> int:
        self._check(i)
        return int(fm_psi(self.wt, i))

    def locate(self, i: int) -> int:
        self._check(i)
        return int(fm_locate(self.wt, self.samples, self.sample_rate, self.d, self.n, i))

    def locate_range(self, lb: int, rb: int) -> np.ndarray:
        return fm_locate_range(self.wt, self.samples, self.sample_rate, self.d, self.n, lb, rb)

    def search(self, pattern) -> tuple[int, int]:
        """SA interval of ``pattern`` (a string or an array of codes)."""
        codes = self.encode(pattern) if isinstance(pattern, (str, bytes)) else np.asarray(pattern, dtype=np.int64)
        if len(codes) == 0:
            return (1, self.n)
        i, j = fm_search(self.wt, codes, self.n)
        return int(i), int(j)

    def encode(self, pattern: str | bytes) -> np.ndarray:
        from .sequence_store import encode_with

        if isinstance(pattern, bytes):
            pattern = pattern.decode("ascii")
        return encode_with(self.alphabet, pattern.upper())

    def extract(self, i: int, length: int) -> str:
        """The ``length`` characters of the suffix at SA index ``i``."""
        self._check(i)
        table = self.symbols
        return "".join(table[c] for c in fm_extract(self.wt, i, length).tolist())

    def extract_text(self) -> Text:
        """Rebuild the indexed text by inverting the BWT."""
        codes = fm_invert(self.wt, self.n)
        return Text(codes=codes, alphabet=dict(self.alphabet), doc_ends=self.doc_ends.copy(),
                    names=self.names)

    def _check(self, i: int) -> None:
        if not 1 <= i <= self.n:
            raise IndexError(f"SA index {i} outside 1..{self.n}")
