"""Pattern search through the graph and per-sequence occurrence queries."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from numba import njit

from .bitvector import get_bit, rank_excl
from .fm_index import FMIndex, fm_backward_search, fm_locate_range, fm_psi
from .graph import ExplicitGraph, ImplicitGraph, _node_id
from .kmer_marking import MarkVectors
from .wavelet import wt_intervals


class PatternTooShort(ValueError):
    pass


@dataclass(frozen=True)
class NodePath:
    node_ids: list[int]
    match_interval: tuple[int, int]
    offset: int = 0
    psi_steps: int = field(default=0, compare=False)

    @property
    def found(self) -> bool:
        return bool(self.node_ids)

    @property
    def width(self) -> int:
        lb, rb = self.match_interval
        return max(rb - lb + 1, 0)



@njit(cache=True)
def _find_nodes(wt, n, d, k, br, bl, rm, lm, nlen, P, out):
    """Fill ``out`` from the back with the node path of ``P``.

    Returns ``(count, lb, rb, offset, psi_steps)``; ``count == 0`` means the
    pattern does not occur.
    """
    m = P.shape[0]
    sigma = wt[3].shape[0] - 1
    lb = 1
    rb = n
    for t in range(m - 1, m - k - 1, -1):
        c = P[t]
        if c < 0 or c >= sigma:
            return 0, 1, 0, 0, 0
        lb, rb = fm_backward_search(wt, c, lb, rb)
        if lb > rb:
            return 0, lb, rb, 0, 0
    i = lb
    j = rb
    node = 0
    ell = 0
    steps = 0
    while node == 0:
        ones = rank_excl(br[0], br[1], br[2], i + 1)
        if ones % 2 == 1 or get_bit(br[0], i) == 1:
            node = (ones + 1) // 2
        elif rank_excl(bl[0], bl[1], bl[2], j + 1) - rank_excl(bl[0], bl[1], bl[2], i) > 0:
            node = rm + rank_excl(bl[0], bl[1], bl[2], i) + 1
        else:
            i = fm_psi(wt, i)
            j = fm_psi(wt, j)
            ell += 1
            steps += 1
            if i <= d:
                node = rm + lm + i
                ell = ell + 1 - k
    ell = nlen[node] - ell - k
    at = out.shape[0] - 1
    out[at] = node
    count = 1
    i = lb
    j = rb
    pos = m - k
    while i <= j and pos > 0:
        c = P[pos - 1]
        if c < 0 or c >= sigma:
            return 0, 1, 0, 0, steps
        i, j = fm_backward_search(wt, c, i, j)
        pos -= 1
        if i > j:
            return 0, i, j, 0, steps
        if ell > 0:
            ell -= 1
        else:
            node = _node_id(br, bl, rm, i)
            at -= 1
            out[at] = node
            count += 1
            ell = nlen[node] - k
    return count, i, j, ell, steps


@njit(cache=True)
def _find_nodes_batch(wt, n, d, k, br, bl, rm, lm, nlen, flat, starts, path_starts, paths, info):
    for q in range(starts.shape[0] - 1):
        P = flat[starts[q] : starts[q + 1]]
        out = paths[path_starts[q] : path_starts[q + 1]]
        cnt, lb, rb, offset, steps = _find_nodes(wt, n, d, k, br, bl, rm, lm, nlen, P, out)
        info[q, 0] = cnt
        info[q, 1] = lb
        info[q, 2] = rb
        info[q, 3] = offset
        info[q, 4] = steps


def _vectors(marks: MarkVectors):
    return ((marks.b_r.words, marks.b_r.supers, marks.b_r.blocks),
            (marks.b_l.words, marks.b_l.supers, marks.b_l.blocks))


def find_nodes(pattern, fm: FMIndex, g: ImplicitGraph, marks: MarkVectors | None = None) -> NodePath:
    """Node path spelling ``pattern``, using only the index and implicit graph.

    Locates the node holding the pattern's last k-mer by moving right with
    Psi until a node end is recognised, then extends the pattern leftwards
    one character at a time, stepping to the previous node whenever the
    current one is used up. ``offset`` is the number of characters of the
    first path node that precede the pattern.
    """
    return find_nodes_batch([pattern], fm, g, marks)[0]


def find_nodes_batch(patterns, fm: FMIndex, g: ImplicitGraph, marks: MarkVectors | None = None) -> list[NodePath]:
    if marks is None:
        marks = MarkVectors.from_graph(g)
    codes = [fm.encode(p) if isinstance(p, (str, bytes)) else np.asarray(p, dtype=np.int64) for p in patterns]
    for p, c in zip(patterns, codes):
        if len(c) < g.k:
            raise PatternTooShort(f"pattern shorter than k ({len(c)} < {g.k})")
    lengths = np.array([len(c) for c in codes], dtype=np.int64)
    starts = np.zeros(len(codes) + 1, dtype=np.int64)
    np.cumsum(lengths, out=starts[1:])
    path_starts = np.zeros(len(codes) + 1, dtype=np.int64)
    np.cumsum(lengths - g.k + 1, out=path_starts[1:])
    flat = np.concatenate(codes) if codes else np.empty(0, dtype=np.int64)
    paths = np.zeros(path_starts[-1], dtype=np.int64)
    info = np.zeros((len(codes), 5), dtype=np.int64)
    br, bl = _vectors(marks)
    _find_nodes_batch(fm.wt, fm.n, fm.d, g.k, br, bl, g.right_max, g.left_max, g.len,
                      flat, starts, path_starts, paths, info)
    out = []
    for q in range(len(codes)):
        cnt, lb, rb, offset, steps = (int(x) for x in info[q])
        if cnt == 0:
            out.append(NodePath([], (1, 0), 0, steps))
        else:
            ids = paths[path_starts[q + 1] - cnt : path_starts[q + 1]].tolist()
            out.append(NodePath(ids, (lb, rb), offset, steps))
    return out


@dataclass(frozen=True)
class DocHits:
    entries: list[tuple[int, int]]

    def total(self) -> int:
        return sum(c for _, c in self.entries)

    def sequences(self) -> list[int]:
        return [s for s, _ in self.entries]

    def count(self, s: int) -> int:
        return dict(self.entries).get(s, 0)

    def format(self) -> str:
        return ",".join(f"{s}:{c}" for s, c in self.entries)


def doc_hits(interval: tuple[int, int], fm: FMIndex) -> DocHits:
    """Sequences containing the SA interval's string, with occurrence counts."""
    lb, rb = interval
    if lb > rb:
        return DocHits([])
    if fm.documents is None:
        raise ValueError("index has no document array")
    dw = fm.documents
    width = 1 << dw.levels
    oc, oa, ob = (np.empty(width, dtype=np.int64) for _ in range(3))
    cnt = wt_intervals(dw.arrays, lb - 1, rb, oc, oa, ob)
    return DocHits([(int(oc[t]) + 1, int(ob[t] - oa[t])) for t in range(cnt)])


def node_occurrences(g: ImplicitGraph, node_id: int, explicit: ExplicitGraph | None = None,
                     fm: FMIndex | None = None) -> list[int]:
    """Ascending text positions where the node string starts."""
    if not 1 <= node_id <= g.num_nodes:
        raise KeyError(f"unknown node id {node_id}")
    if explicit is not None:
        return explicit.pos_list(node_id).tolist()
    if fm is None:
        raise ValueError("need the explicit graph or the index")
    lb, size = int(g.lb[node_id]), int(g.size[node_id])
    pos = fm_locate_range(fm.wt, fm.samples, fm.sample_rate, fm.d, fm.n, lb, lb + size - 1)
    return sorted(pos.tolist())
