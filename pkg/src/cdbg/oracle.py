"""Brute-force reference implementations for testing.

Everything here works on plain Python strings and lists and shares no code
with the index-based pipeline. It is quadratic or worse and only meant for
small inputs.

Terminators are modelled as distinct tokens: the separator after sequence
``s`` is ``("#", s)`` and the last sequence ends with ``("$", d)``. Both
print as ``#`` and ``$``.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field

SENTINEL_BYTE = "\x00"
SEPARATOR_BYTE = "\x01"


@dataclass
class NaiveSuffixStructures:
    text: str  # with "$" and "#" replaced by \x00 and \x01
    sa: list[int]
    bwt: list[str]
    lcp: list[int]  # lcp[i-1] = LCP[i] for i in 1..n, plus lcp[n] = LCP[n+1] = 0
    doc: list[int]
    c_array: dict[str, int]
    lf: list[int]
    psi: list[int]

    def display(self, ch: str) -> str:
        return {SENTINEL_BYTE: "$", SEPARATOR_BYTE: "#"}.get(ch, ch)


def naive_text(seqs: list[str]) -> str:
    return SEPARATOR_BYTE.join(s.upper() for s in seqs) + SENTINEL_BYTE


def _is_term(ch: str) -> bool:
    return ch in (SENTINEL_BYTE, SEPARATOR_BYTE)


def naive_suffix_structures(seqs: list[str]) -> NaiveSuffixStructures:
    text = naive_text(seqs)
    n = len(text)
    sa = sorted(range(1, n + 1), key=lambda p: text[p - 1 :])
    bwt = [text[p - 2] for p in sa]  # text[-1] is the sentinel for p == 1

    def common(a: int, b: int) -> int:
        # distinct terminators never match each other
        m = 0
        while a + m <= n and b + m <= n:
            x, y = text[a - 1 + m], text[b - 1 + m]
            if x != y or _is_term(x):
                break
            m += 1
        return m

    lcp = [0] + [common(sa[i - 1], sa[i]) for i in range(1, n)] + [0]
    ends = [i + 1 for i, ch in enumerate(text) if _is_term(ch)]
    doc = [next(s + 1 for s, e in enumerate(ends) if p <= e) for p in sa]
    alphabet = sorted(set(text))
    c_array = {c: sum(1 for x in text if x < c) for c in alphabet}
    rank_at = []
    seen: dict[str, int] = defaultdict(int)
    for ch in bwt:
        seen[ch] += 1
        rank_at.append(seen[ch])
    lf = [c_array[ch] + r for ch, r in zip(bwt, rank_at)]
    inv = [0] * (n + 1)
    for i, p in enumerate(sa, 1):
        inv[p] = i
    psi = [inv[p % n + 1] for p in sa]
    return NaiveSuffixStructures(text, sa, bwt, lcp, doc, c_array, lf, psi)


def lcp_classes(lcp: list[int], k: int) -> list[int]:
    """0 / 1 / 2 for ``< k`` / ``== k`` / ``> k``."""
    return [0 if v < k else (1 if v == k else 2) for v in lcp]


@dataclass
class NaiveNode:
    string: str
    positions: list[int]
    kmers: list[tuple] = field(repr=False, default_factory=list)


@dataclass
class NaiveGraph:
    k: int
    nodes: list[NaiveNode]  # ordered by first position
    walks: list[list[int]]  # indices into nodes, one walk per sequence
    edges: list[tuple[int, int, int]]  # (u, v, position of the u occurrence)
    right_maximal: set[str]
    left_maximal: set[str]

    def key(self, idx: int) -> tuple[str, tuple[int, ...]]:
        node = self.nodes[idx]
        return node.string, tuple(node.positions)

    def node_set(self) -> set[tuple[str, tuple[int, ...]]]:
        return {self.key(i) for i in range(len(self.nodes))}

    def walk_strings(self) -> list[list[str]]:
        return [[self.nodes[v].string for v in walk] for walk in self.walks]

    def edge_set(self) -> set[tuple[str, str, int]]:
        return {(self.nodes[u].string, self.nodes[v].string, p) for u, v, p in self.edges}


def _show(tok) -> str:
    return tok if isinstance(tok, str) else tok[0]


def naive_compressed_graph(seqs: list[str], k: int) -> NaiveGraph:
    """Compacted de Bruijn graph of the sequences by explicit k-mer merging.

    Each sequence contributes its k-mers plus the final k-mer that ends in
    its own terminator. Consecutive k-mers of a sequence are linked; a
    virtual start precedes the first k-mer. ``u -> v`` is merged when ``u``
    has exactly one distinct successor ``v`` and ``v`` exactly one distinct
    predecessor ``u``.
    """
    d = len(seqs)
    seqs = [s.upper() for s in seqs]
    if k < 2 or any(len(s) < k for s in seqs):
        raise ValueError("need 2 <= k <= shortest sequence length")
    succ: dict[tuple, set] = defaultdict(set)
    pred: dict[tuple, set] = defaultdict(set)
    occ: dict[tuple, list[int]] = defaultdict(list)
    seq_kmers: list[list[tuple[tuple, int]]] = []
    start = 1
    for s, seq in enumerate(seqs, 1):
        term = ("$", s) if s == d else ("#", s)
        toks = list(seq) + [term]
        kmers = [(tuple(toks[p : p + k]), start + p) for p in range(len(toks) - k + 1)]
        pred[kmers[0][0]].add(("START", s))
        for (a, _), (b, _) in zip(kmers, kmers[1:]):
            succ[a].add(b)
            pred[b].add(a)
        for km, p in kmers:
            occ[km].append(p)
        seq_kmers.append(kmers)
        start += len(toks)

    nxt = {}
    for u, vs in succ.items():
        if len(vs) == 1:
            (v,) = vs
            if v != u and len(pred[v]) == 1:
                nxt[u] = v
    has_prev = set(nxt.values())
    head_of: dict[tuple, int] = {}
    nodes: list[NaiveNode] = []
    for km in occ:
        if km in has_prev:
            continue
        chain = [km]
        while chain[-1] in nxt:
            chain.append(nxt[chain[-1]])
            if len(chain) > len(occ):
                raise AssertionError("unbranched cycle")
        string = "".join(_show(t) for t in chain[0]) + "".join(_show(c[-1]) for c in chain[1:])
        head_of[km] = len(nodes)
        nodes.append(NaiveNode(string, sorted(occ[km]), chain))
    covered = sum(len(nd.kmers) for nd in nodes)
    if covered != len(occ):
        raise AssertionError("k-mers left outside every node")

    order = sorted(range(len(nodes)), key=lambda i: nodes[i].positions[0])
    rename = {old: new for new, old in enumerate(order)}
    nodes = [nodes[i] for i in order]
    head_of = {km: rename[i] for km, i in head_of.items()}

    walks, edges = [], []
    for kmers in seq_kmers:
        walk, at = [], []
        for km, p in kmers:
            if km in head_of:
                walk.append(head_of[km])
                at.append(p)
        walks.append(walk)
        edges.extend((u, v, p) for u, v, p in zip(walk, walk[1:], at))

    def text_of(km):
        return "".join(_show(t) for t in km)

    plain = [km for km in occ if all(isinstance(t, str) for t in km)]
    right = {text_of(km) for km in plain if len(succ[km]) > 1}
    left = {text_of(km) for km in plain if len(pred[km]) > 1}
    return NaiveGraph(k, nodes, walks, edges, right, left)


def naive_occurrences(seqs: list[str], pattern: str) -> dict[int, int]:
    """Occurrence count of ``pattern`` per 1-based sequence number."""
    out = {}
    pattern = pattern.upper()
    for s, seq in enumerate(seqs, 1):
        cnt = sum(1 for p in range(len(seq) - len(pattern) + 1) if seq.startswith(pattern, p))
        if cnt:
            out[s] = cnt
    return out


def naive_find_path(graph: NaiveGraph, seqs: list[str], pattern: str) -> list[list[int]]:
    """Distinct node-visit slices of the walks covering the k-mers of ``pattern``.

    A visit of a node of length ``L`` at position ``p`` owns the k-mers
    starting at ``p .. p+L-k``; the slice of an occurrence is every visit
    owning one of its k-mers. A correct graph yields at most one slice.
    """
    pattern = pattern.upper()
    k = graph.k
    paths = set()
    at = 1
    for s, seq in enumerate(seqs):
        visits = []
        p = at
        for v in graph.walks[s]:
            size = len(graph.nodes[v].string)
            visits.append((v, p, p + size - k))
            p += size - k + 1
        for q in range(len(seq) - len(pattern) + 1):
            if seq.startswith(pattern, q):
                first = at + q
                last = first + len(pattern) - k
                paths.add(tuple(v for v, lo, hi in visits if lo <= last and hi >= first))
        at += len(seq) + 1
    return [list(p) for p in sorted(paths)]


def naive_edge_formula(seqs: list[str], k: int) -> dict[str, int]:
    """Node and edge counts from k-mer repeat classes, by brute force.

    ``V1``: right-maximal k-mer repeats. ``V2``: k-mers outside ``V1`` with an
    occurrence immediately followed (shifted by one) by a left-maximal k-mer
    repeat. Terminators count as pairwise distinct characters, and so does
    the start of every sequence. The edge count is the number of text
    positions holding a k-mer of ``V1`` or ``V2``.
    """
    follow: dict[str, set] = defaultdict(set)
    before: dict[str, set] = defaultdict(set)
    where: list[tuple[str, str | None]] = []  # (k-mer, next k-mer or None)
    for s, seq in enumerate(seqs):
        seq = seq.upper()
        for p in range(len(seq) - k + 1):
            km = seq[p : p + k]
            follow[km].add(seq[p + k] if p + k < len(seq) else ("end", s))
            before[km].add(seq[p - 1] if p > 0 else ("start", s))
            where.append((km, seq[p + 1 : p + k + 1] if p + k < len(seq) else None))
    count = defaultdict(int)
    for km, _ in where:
        count[km] += 1
    v1 = {km for km in follow if len(follow[km]) > 1 and count[km] > 1}
    left = {km for km in before if len(before[km]) > 1 and count[km] > 1}
    v2 = {km for km, nxt in where if km not in v1 and nxt is not None and nxt in left}
    return {
        "v1": len(v1),
        "v2": len(v2),
        "nodes": len(v1) + len(v2) + len(seqs),
        "edges": sum(1 for km, _ in where if km in v1 or km in v2),
    }
