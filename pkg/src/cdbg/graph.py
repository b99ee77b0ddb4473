"""Compressed de Bruijn graph construction on top of the FM-index.

Node ids are 1-based and fall in three ranges:

* ``1..right_max``: nodes whose last k-mer is right-maximal, in ascending
  order of that k-mer's SA interval;
* ``right_max+1 .. right_max+left_max``: nodes whose last k-mer precedes a
  left-maximal k-mer, numbered by the B_l mark of that k-mer;
* the last ``d`` ids: stop nodes, one per terminator, ``id = rM + lM + s``
  where ``s`` is the SA index of the terminator suffix.

The implicit graph stores per node ``(len, lb, size, suffix_lb)``: the node
string length, the SA interval ``[lb, lb+size-1]`` of the whole node string
and the left bound of its last k-mer's interval.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numba import njit

from .bitvector import RankBitVector, get_bit, rank_excl
from .fm_index import FMIndex, fm_get_intervals, fm_lf_char
from .kmer_marking import MarkVectors
from .sequence_store import SEPARATOR

# trace event kinds
DEQUEUE, EXTEND, CREATE, BLOCKED, TERMINATOR = 0, 1, 2, 3, 4
EVENT_NAMES = ("dequeue", "extend", "create", "blocked", "terminator")
TRACE_FIELDS = ("kind", "node", "source", "code", "i", "j", "len", "lb", "size", "suffix_lb", "ones")


class GraphBuildError(RuntimeError):
    pass


@dataclass(frozen=True)
class ImplicitNode:
    len: int
    lb: int
    size: int
    suffix_lb: int


@dataclass(eq=False)
class ImplicitGraph:
    """Arrays are indexed by node id; slot 0 is unused."""

    k: int
    n: int
    d: int
    right_max: int
    left_max: int
    len: np.ndarray
    lb: np.ndarray
    size: np.ndarray
    suffix_lb: np.ndarray

    @property
    def num_nodes(self) -> int:
        return self.right_max + self.left_max + self.d

    def __len__(self) -> int:
        return self.num_nodes

    def node(self, node_id: int) -> ImplicitNode:
        if not 1 <= node_id <= self.num_nodes:
            raise IndexError(node_id)
        return ImplicitNode(int(self.len[node_id]), int(self.lb[node_id]),
                            int(self.size[node_id]), int(self.suffix_lb[node_id]))

    def nodes(self) -> list[ImplicitNode]:
        return [self.node(v) for v in range(1, self.num_nodes + 1)]

    def is_stop(self, node_id: int) -> bool:
        return node_id > self.right_max + self.left_max

    def stop_id(self, s: int) -> int:
        """Id of the stop node for the terminator suffix at SA index ``s``."""
        return self.right_max + self.left_max + s

    def num_edges(self) -> int:
        stop = self.right_max + self.left_max
        return int(self.size[1 : stop + 1].sum())

    def string(self, fm: FMIndex, node_id: int) -> str:
        """Node string, read forwards from the index with Psi."""
        node = self.node(node_id)
        return fm.extract(node.lb, node.len)


@dataclass(frozen=True)
class ExplicitNode:
    len: int
    pos_list: tuple[int, ...]
    adj_list: tuple[int, ...]


@dataclass(eq=False)
class ExplicitGraph:
    """Per-node position and adjacency lists in CSR form.

    ``pos_list(v)`` holds the ascending 1-based text positions where node
    ``v`` starts; ``adj_list(v)[t]`` is the successor on the walk leaving the
    occurrence at ``pos_list(v)[t]``. Stop nodes have an empty adjacency list.
    ``start_nodes[s-1]`` is the first node of sequence ``s``.
    """

    k: int
    d: int
    right_max: int
    left_max: int
    len: np.ndarray
    pos_offsets: np.ndarray
    positions: np.ndarray
    adj_offsets: np.ndarray
    adj: np.ndarray
    start_nodes: np.ndarray

    @property
    def num_nodes(self) -> int:
        return len(self.len) - 1

    def __len__(self) -> int:
        return self.num_nodes

    def is_stop(self, node_id: int) -> bool:
        return node_id > self.right_max + self.left_max

    def pos_list(self, node_id: int) -> np.ndarray:
        return self.positions[self.pos_offsets[node_id] : self.pos_offsets[node_id + 1]]

    def adj_list(self, node_id: int) -> np.ndarray:
        return self.adj[self.adj_offsets[node_id] : self.adj_offsets[node_id + 1]]

    def node(self, node_id: int) -> ExplicitNode:
        if not 1 <= node_id <= self.num_nodes:
            raise IndexError(node_id)
        return ExplicitNode(int(self.len[node_id]), tuple(self.pos_list(node_id).tolist()),
                            tuple(self.adj_list(node_id).tolist()))

    def num_edges(self) -> int:
        return len(self.adj)

    def terminator_positions(self) -> np.ndarray:
        """Ascending text positions of the d terminators (stop node occurrences)."""
        stop = self.right_max + self.left_max
        ids = np.arange(stop + 1, self.num_nodes + 1)
        starts = self.positions[self.pos_offsets[stop + 1] :]
        return np.sort(starts + self.len[ids] - 1)

    def walks(self) -> list[list[int]]:
        """The node walk spelling each sequence, ending at its stop node."""
        starts = np.concatenate([[1], self.terminator_positions()[:-1] + 1])
        out = []
        for s in range(self.d):
            v = int(self.start_nodes[s])
            pos = int(starts[s])
            walk = [v]
            while not self.is_stop(v):
                t = int(np.searchsorted(self.pos_list(v), pos))
                if self.pos_list(v)[t] != pos:
                    raise GraphBuildError(f"node {v} has no occurrence at {pos}")
                pos += int(self.len[v]) - self.k + 1
                v = int(self.adj_list(v)[t])
                walk.append(v)
            out.append(walk)
        return out

    def edges(self):
        """Yield ``(u, v, position)`` for every edge occurrence."""
        for u in range(1, self.right_max + self.left_max + 1):
            for p, v in zip(self.pos_list(u).tolist(), self.adj_list(u).tolist()):
                yield u, v, p


@dataclass(frozen=True)
class GraphStats:
    k: int
    nodes: int
    edges: int
    right_max: int
    left_max: int
    stop_nodes: int
    longest: int
    total_length: int


def graph_stats(g: ImplicitGraph) -> GraphStats:
    ids = slice(1, g.num_nodes + 1)
    return GraphStats(
        k=g.k,
        nodes=g.num_nodes,
        edges=g.num_edges(),
        right_max=g.right_max,
        left_max=g.left_max,
        stop_nodes=g.d,
        longest=int(g.len[ids].max()),
        total_length=int(g.len[ids].sum()),
    )


@njit(cache=True)
def _node_id(br, bl, rm, i):
    """Id of the node whose last k-mer has interval starting at ``i``."""
    ones = rank_excl(br[0], br[1], br[2], i + 1)
    if ones % 2 == 0 and get_bit(br[0], i) == 0:
        return rm + rank_excl(bl[0], bl[1], bl[2], i) + 1
    return (ones + 1) // 2


@njit(cache=True)
def _emit(ev, cnt, kind, node, source, c, i, j, ln, lb, size, slb, ones):
    if cnt >= ev.shape[0]:
        return cnt
    ev[cnt, 0] = kind
    ev[cnt, 1] = node
    ev[cnt, 2] = source
    ev[cnt, 3] = c
    ev[cnt, 4] = i
    ev[cnt, 5] = j
    ev[cnt, 6] = ln
    ev[cnt, 7] = lb
    ev[cnt, 8] = size
    ev[cnt, 9] = slb
    ev[cnt, 10] = ones
    return cnt + 1


@njit(cache=True)
def _create_graph(wt, k, d, br, bl, rm, lm, nlen, nlb, nsize, nslb, tracing, ev):
    num = rm + lm + d
    width = wt[3].shape[0] - 1
    oc = np.empty(width, dtype=np.int64)
    oi = np.empty(width, dtype=np.int64)
    oj = np.empty(width, dtype=np.int64)
    queue = np.empty(num + 1, dtype=np.int64)
    seen = np.zeros(num + 1, dtype=np.uint8)
    tail = 0
    for v in range(1, rm + 1):
        queue[tail] = v
        seen[v] = 1
        tail += 1
    for s in range(1, d + 1):
        v = rm + lm + s
        nlen[v] = 1
        nlb[v] = s
        nsize[v] = 1
        nslb[v] = s
        queue[tail] = v
        seen[v] = 1
        tail += 1
    head = 0
    nev = 0
    while head < tail:
        v = queue[head]
        head += 1
        if tracing:
            nev = _emit(ev, nev, DEQUEUE, v, v, -1, -1, -1, nlen[v], nlb[v], nsize[v], nslb[v], -1)
        while True:
            extendable = False
            cnt = fm_get_intervals(wt, nlb[v], nlb[v] + nsize[v] - 1, oc, oi, oj)
            for t in range(cnt):
                c = oc[t]
                i = oi[t]
                j = oj[t]
                ones = rank_excl(br[0], br[1], br[2], i + 1)
                if ones % 2 == 0 and get_bit(br[0], i) == 0:
                    if c > SEPARATOR:
                        if cnt == 1:
                            extendable = True
                            nlen[v] += 1
                            nlb[v] = i
                            if tracing:
                                nev = _emit(ev, nev, EXTEND, v, v, c, i, j, nlen[v], nlb[v],
                                            nsize[v], nslb[v], ones)
                        else:
                            w = rm + rank_excl(bl[0], bl[1], bl[2], i) + 1
                            if w <= rm or w > rm + lm or seen[w]:
                                return -w, nev
                            seen[w] = 1
                            nlen[w] = k
                            nlb[w] = i
                            nsize[w] = j - i + 1
                            nslb[w] = i
                            queue[tail] = w
                            tail += 1
                            if tracing:
                                nev = _emit(ev, nev, CREATE, w, v, c, i, j, k, i, j - i + 1, i, ones)
                    elif tracing:
                        nev = _emit(ev, nev, TERMINATOR, v, v, c, i, j, -1, -1, -1, -1, ones)
                elif tracing:
                    nev = _emit(ev, nev, BLOCKED, v, v, c, i, j, -1, -1, -1, -1, ones)
            if not extendable:
                break
    return tail, nev


def create_compressed_graph(k: int, fm: FMIndex, marks: MarkVectors, initial: np.ndarray,
                            trace: list | None = None) -> ImplicitGraph:
    """Grow every node leftwards from its last k-mer until a boundary.

    Nodes are seeded with the right-maximal k-mers in ``initial`` and one
    stop node per terminator. When a node's interval has a single non-
    terminator predecessor that is not itself a right-maximal k-mer, the node
    is extended; otherwise every such predecessor starts a new node.

    If ``trace`` is a list, one dict per event is appended to it.
    """
    rm, lm, d = marks.right_max, marks.left_max, fm.d
    if len(initial) != rm:
        raise GraphBuildError("initial node count does not match B_r")
    num = rm + lm + d
    arrays = [np.zeros(num + 1, dtype=np.int64) for _ in range(4)]
    for col, arr in enumerate(arrays):
        arr[1 : rm + 1] = initial[:, col]
    # terminator suffixes are never predecessors of a k-mer, so this is a no-op
    # in practice; clear it anyway so stop nodes never collide with B_l ids
    b_l = marks.b_l
    if b_l.rank1(d) > 0:
        raw = np.zeros(fm.n + 1, dtype=np.uint8)
        raw[1:] = b_l.to_array()
        raw[1 : d + 1] = 0
        b_l = RankBitVector.from_raw(raw, fm.n)
    br = (marks.b_r.words, marks.b_r.supers, marks.b_r.blocks)
    bl = (b_l.words, b_l.supers, b_l.blocks)
    tracing = trace is not None
    cap = 4 * (fm.n + num) + 16 if tracing else 1
    ev = np.zeros((cap, len(TRACE_FIELDS)), dtype=np.int64)
    created, nev = _create_graph(fm.wt, k, d, br, bl, rm, lm, *arrays, tracing, ev)
    if created < 0:
        raise GraphBuildError(f"node id {-created} created twice or out of range")
    if created != num:
        raise GraphBuildError(f"expected {num} nodes, created {created}")
    if tracing:
        for row in ev[:nev].tolist():
            rec = dict(zip(TRACE_FIELDS, row))
            rec["kind"] = EVENT_NAMES[rec["kind"]]
            trace.append(rec)
    return ImplicitGraph(k, fm.n, d, rm, lm, *arrays)


@njit(cache=True)
def _explicit(wt, n, k, d, br, bl, rm, lm, nlen, nlb, nslb, pos_off, adj_off, seq_starts):
    num = rm + lm + d
    positions = np.empty(pos_off[num + 1], dtype=np.int64)
    adj = np.empty(adj_off[num + 1], dtype=np.int64)
    pfill = pos_off[2:].copy()  # pfill[v-1]: one past the last free slot of v
    afill = adj_off[2:].copy()
    starts = np.zeros(d, dtype=np.int64)
    i = 1
    term = n
    for s in range(1, d + 1):
        v = rm + lm + i
        pos = term - nlen[v] + 1
        pfill[v - 1] -= 1
        if pfill[v - 1] < pos_off[v]:
            return -1, positions, adj, starts
        positions[pfill[v - 1]] = pos
        idx = nlb[v]
        while True:
            c, i = fm_lf_char(wt, idx)
            if c <= SEPARATOR:
                break
            w = _node_id(br, bl, rm, i)
            npos = pos - 1 - (nlen[w] - k)
            pfill[w - 1] -= 1
            afill[w - 1] -= 1
            if pfill[w - 1] < pos_off[w] or afill[w - 1] < adj_off[w]:
                return -2, positions, adj, starts
            positions[pfill[w - 1]] = npos
            adj[afill[w - 1]] = v
            idx = nlb[w] + (i - nslb[w])
            v = w
            pos = npos
        seq = d + 1 - s
        starts[seq - 1] = v
        if pos != seq_starts[seq - 1]:
            return -3 - seq, positions, adj, starts
        term = pos - 1
    return 0, positions, adj, starts


def construct_explicit_graph(g: ImplicitGraph, fm: FMIndex, marks: MarkVectors | None = None) -> ExplicitGraph:
    """Walk each sequence backwards with LF and record node occurrences.

    Every occurrence of a node gets its text position and the node that
    follows it; the walk of sequence ``s`` ends at its stop node.
    """
    if marks is None:
        marks = MarkVectors.from_graph(g)
    rm, lm, d = g.right_max, g.left_max, g.d
    num = g.num_nodes
    sizes = g.size[1:].copy()
    pos_off = np.zeros(num + 2, dtype=np.int64)
    pos_off[2:] = np.cumsum(sizes)
    adj_sizes = sizes.copy()
    adj_sizes[rm + lm :] = 0
    adj_off = np.zeros(num + 2, dtype=np.int64)
    adj_off[2:] = np.cumsum(adj_sizes)
    seq_starts = np.concatenate([[1], fm.doc_ends[:-1] + 1]).astype(np.int64)
    br = (marks.b_r.words, marks.b_r.supers, marks.b_r.blocks)
    bl = (marks.b_l.words, marks.b_l.supers, marks.b_l.blocks)
    status, positions, adj, starts = _explicit(fm.wt, fm.n, g.k, d, br, bl, rm, lm, g.len, g.lb,
                                               g.suffix_lb, pos_off, adj_off, seq_starts)
    if status == -1 or status == -2:
        raise GraphBuildError("node occurrence count exceeds its interval size")
    if status < 0:
        raise GraphBuildError(f"walk of sequence {-3 - status} does not start at its first position")
    step = np.diff(positions)
    inside = np.ones(len(step), dtype=bool)
    bounds = pos_off[2:-1] - 1
    inside[bounds[(bounds >= 0) & (bounds < len(step))]] = False
    if np.any(step[inside] <= 0):
        raise GraphBuildError("node positions are not strictly ascending")
    return ExplicitGraph(g.k, d, rm, lm, g.len.copy(), pos_off, positions, adj_off, adj, starts)
