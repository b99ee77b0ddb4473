"""Shared fixtures data and invariant checks for the test suite."""

from __future__ import annotations

import random
from collections import defaultdict

import numpy as np

from cdbg.pipeline import build_graph, build_index
from cdbg.suffix import build_suffix_array
from cdbg.sequence_store import SequenceStore, concatenate

RUNNING = "ACTACGTACGTACG"

# columns of the running example's suffix table, indices 1..15
EX_SA = [15, 12, 8, 4, 1, 13, 9, 5, 2, 14, 10, 6, 11, 7, 3]
EX_LCP = [-1, 0, 3, 7, 2, 0, 2, 6, 1, 0, 1, 5, 0, 4, 8, -1]  # indices 1..16
EX_BWT = "GTTT$AAAACCCGGC"
EX_LF = [10, 13, 14, 15, 1, 2, 3, 4, 5, 6, 7, 8, 11, 12, 9]
EX_PSI = [5, 6, 7, 8, 9, 10, 11, 12, 15, 1, 13, 14, 2, 3, 4]
EX_BR = {2, 4}
EX_BL = {9, 12}
EX_NODES = [(4, 13, 3, 2), (4, 5, 1, 9), (4, 7, 2, 11), (3, 6, 1, 1)]
# node string -> (posList, adjList as node strings)
EX_EXPLICIT = {
    "TACG": ([3, 7, 11], ["CGTA", "CGTA", "CG$"]),
    "CGTA": ([5, 9], ["TACG", "TACG"]),
    "ACTA": ([1], ["TACG"]),
    "CG$": ([13], []),
}
EX_START = "ACTA"


def random_instance(rng: random.Random, min_len: int = 10, max_len: int = 100,
                    max_d: int = 4, kmax: int = 8) -> tuple[list[str], int]:
    d = rng.randint(1, max_d)
    seqs = ["".join(rng.choice("ACGT") for _ in range(rng.randint(min_len, max_len))) for _ in range(d)]
    k = rng.randint(2, min(kmax, min(len(s) for s in seqs)))
    return seqs, k


def random_instances(seed: int, count: int, **kw):
    rng = random.Random(seed)
    return [random_instance(rng, **kw) for _ in range(count)]


def full_sa(seqs: list[str]) -> np.ndarray:
    return build_suffix_array(concatenate(SequenceStore.from_strings(seqs))).sa


def build_all(seqs: list[str], k: int, trace: list | None = None, sample_rate: int = 4):
    fm = build_index(seqs, sample_rate=sample_rate)
    bundle = build_graph(fm, k, explicit=True, trace=trace)
    return fm, bundle


def node_strings(fm, g) -> dict[int, str]:
    return {v: g.string(fm, v) for v in range(1, g.num_nodes + 1)}


def graph_signature(fm, g, eg):
    """Id-free description: node set, edge multiset and walks as strings."""
    names = node_strings(fm, g)
    nodes = {(names[v], tuple(eg.pos_list(v).tolist())) for v in names}
    walks = [[names[v] for v in w] for w in eg.walks()]
    edges = {(names[u], names[v], p) for u, v, p in eg.edges()}
    return nodes, walks, edges


def br_intervals(marks) -> list[tuple[int, int]]:
    ones = marks.b_r.ones().tolist()
    return list(zip(ones[::2], ones[1::2]))


def parity_violations(marks, trace) -> list:
    """Events whose parity test disagrees with direct interval containment."""
    spans = br_intervals(marks)
    bad = []
    for ev in trace:
        if ev["kind"] not in ("extend", "create", "blocked", "terminator"):
            continue
        i, j = ev["i"], ev["j"]
        parity = marks.b_r.rank1(i) % 2 == 0 and marks.b_r[i] == 0
        contained = any(lb <= i and j <= rb for lb, rb in spans)
        if parity == contained:
            bad.append(ev)
    return bad


def transport_violations(g, sa: np.ndarray) -> list[int]:
    bad = []
    for v in range(1, g.right_max + g.left_max + 1):
        lb, slb, size, ln = int(g.lb[v]), int(g.suffix_lb[v]), int(g.size[v]), int(g.len[v])
        if not np.array_equal(sa[lb - 1 : lb - 1 + size], sa[slb - 1 : slb - 1 + size] - (ln - g.k)):
            bad.append(v)
    return bad


def walk_violations(fm, g, eg, seqs: list[str]) -> list[int]:
    names = node_strings(fm, g)
    bad = []
    for s, walk in enumerate(eg.walks()):
        spelled = names[walk[0]] + "".join(names[v][g.k - 1 :] for v in walk[1:])
        if spelled != seqs[s] + ("$" if s == len(seqs) - 1 else "#"):
            bad.append(s + 1)
    return bad


def mergeable_edges(eg) -> list[tuple[int, int]]:
    """Distinct edges ``u -> v`` that a further compression step could merge."""
    succ, pred = defaultdict(set), defaultdict(set)
    for u, v, _ in eg.edges():
        succ[u].add(v)
        pred[v].add(u)
    for s, v in enumerate(eg.start_nodes.tolist()):
        pred[v].add(("start", s))
    return [(u, v) for u in succ for v in succ[u]
            if u != v and len(succ[u]) == 1 and len(pred[v]) == 1]
