"""Build index and implicit graph for a synthetic pan-genome and report cost.

Ten variants of a random 1 Mbp base genome, each carrying about 1% point
substitutions and short indels, give a text of roughly 10 MB. Prints one
JSON object with timings, peak RSS and invariant checks.
"""

from __future__ import annotations

import argparse
import json
import resource
import time

import numpy as np


def synthetic_pangenome(base_len: int, d: int, rate: float, seed: int) -> list[bytes]:
    rng = np.random.default_rng(seed)
    letters = np.frombuffer(b"ACGT", dtype=np.uint8)
    base = letters[rng.integers(0, 4, base_len)]
    out = []
    for _ in range(d):
        seq = base.copy()
        sites = np.flatnonzero(rng.random(base_len) < rate)
        kinds = rng.random(len(sites))
        subs = sites[kinds < 0.8]
        seq[subs] = letters[(np.searchsorted(letters, seq[subs]) + rng.integers(1, 4, len(subs))) % 4]
        pieces, last = [], 0
        for s, kind in zip(sites[kinds >= 0.8], kinds[kinds >= 0.8]):
            pieces.append(seq[last:s])
            size = int(rng.integers(1, 6))
            if kind < 0.9:
                pieces.append(letters[rng.integers(0, 4, size)])  # insertion
                last = s
            else:
                last = min(s + size, base_len)  # deletion
        pieces.append(seq[last:])
        out.append(np.concatenate(pieces).tobytes())
    return out


def run(base_len: int, d: int, k: int, seed: int) -> dict:
    from cdbg.fm_index import FMIndex
    from cdbg.graph import create_compressed_graph, graph_stats
    from cdbg.kmer_marking import MarkVectors, create_bit_vectors, truncated_lcp, validate_k
    from cdbg.query import doc_hits, find_nodes_batch
    from cdbg.sequence_store import SequenceStore, concatenate
    from cdbg.suffix import build_bwt, build_suffix_array

    report: dict = {}
    t0 = time.perf_counter()
    seqs = synthetic_pangenome(base_len, d, 0.01, seed)
    text = concatenate(SequenceStore(tuple((f"v{i + 1}", s) for i, s in enumerate(seqs))))
    report["n"] = text.n
    t1 = time.perf_counter()
    sa = build_suffix_array(text)
    bwt = build_bwt(text, sa)
    fm = FMIndex.build(text, sa=sa, bwt=bwt)
    bwt_codes = bwt.bwt
    del sa, bwt
    t2 = time.perf_counter()
    validate_k(k, fm)
    lcp = truncated_lcp(fm, k)
    marks, initial, _ = create_bit_vectors(k, fm, lcp, bwt=bwt_codes)
    del lcp, bwt_codes
    g = create_compressed_graph(k, fm, marks, initial)
    t3 = time.perf_counter()
    st = graph_stats(g)
    report.update(nodes=st.nodes, edges=st.edges, longest=st.longest, right_max=st.right_max,
                  left_max=st.left_max)

    checks = {}
    checks["node_count"] = st.nodes == g.right_max + g.left_max + g.d
    checks["br_pairs"] = marks.b_r.count() == 2 * g.right_max
    stop = g.right_max + g.left_max
    checks["stop_nodes"] = bool(np.all(g.suffix_lb[stop + 1 :] == np.arange(1, d + 1))
                                and np.all(g.size[stop + 1 :] == 1))
    checks["min_len"] = bool(np.all(g.len[1:] >= k))
    # node intervals of distinct non-stop nodes are disjoint and cover only k-mer suffixes
    lbs, sizes = g.lb[1 : stop + 1], g.size[1 : stop + 1]
    order = np.argsort(lbs)
    checks["disjoint"] = bool(np.all(lbs[order][1:] > (lbs + sizes - 1)[order][:-1]))
    rebuilt = MarkVectors.from_graph(g)
    checks["marks_roundtrip"] = rebuilt.b_r == marks.b_r and rebuilt.b_l == marks.b_l
    rng = np.random.default_rng(seed + 1)
    ids = rng.integers(1, st.nodes + 1, 200)
    transport = True
    for v in ids:
        if g.is_stop(int(v)):
            continue
        q = int(rng.integers(0, g.size[v]))
        transport &= fm.locate(int(g.lb[v] + q)) == fm.locate(int(g.suffix_lb[v] + q)) - int(g.len[v] - k)
    checks["transport_sample"] = bool(transport)
    pats = []
    for _ in range(200):
        s = seqs[int(rng.integers(0, d))]
        m = int(rng.integers(k, 4 * k))
        p = int(rng.integers(0, len(s) - m))
        pats.append(s[p : p + m].decode())
    res = find_nodes_batch(pats, fm, g, marks)
    checks["search_found"] = all(r.found for r in res)
    checks["doc_totals"] = all(doc_hits(r.match_interval, fm).total() == r.width for r in res)
    t4 = time.perf_counter()

    report["checks"] = checks
    report["seconds"] = {"generate": t1 - t0, "index": t2 - t1, "graph": t3 - t2, "checks": t4 - t3,
                         "index_and_graph": t3 - t1}
    report["max_rss_mb"] = resource.getrusage(resource.RUSAGE_SELF).ru_maxrss / 1024
    return report


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--base-len", type=int, default=1_000_000)
    ap.add_argument("-d", type=int, default=10)
    ap.add_argument("-k", type=int, default=50)
    ap.add_argument("--seed", type=int, default=7)
    args = ap.parse_args()
    print(json.dumps(run(args.base_len, args.d, args.k, args.seed)))


if __name__ == "__main__":
    main()
