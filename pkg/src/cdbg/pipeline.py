"""One-call helpers chaining the construction stages."""

from __future__ import annotations

from dataclasses import dataclass

from .fm_index import DEFAULT_SAMPLE_RATE, FMIndex
from .graph import ExplicitGraph, ImplicitGraph, construct_explicit_graph, create_compressed_graph
from .kmer_marking import MarkVectors, create_bit_vectors, truncated_lcp, validate_k
from .sequence_store import SequenceStore, Text, concatenate


@dataclass(eq=False)
class GraphBundle:
    graph: ImplicitGraph
    marks: MarkVectors
    explicit: ExplicitGraph | None = None


def build_index(source, sample_rate: int = DEFAULT_SAMPLE_RATE) -> FMIndex:
    """Index a ``SequenceStore``, a ``Text`` or a list of sequence strings."""
    if isinstance(source, Text):
        text = source
    else:
        store = source if isinstance(source, SequenceStore) else SequenceStore.from_strings(source)
        text = concatenate(store)
    return FMIndex.build(text, sample_rate=sample_rate)


def build_graph(fm: FMIndex, k: int, explicit: bool = False, trace: list | None = None) -> GraphBundle:
    validate_k(k, fm)
    lcp = truncated_lcp(fm, k)
    marks, initial, _ = create_bit_vectors(k, fm, lcp)
    del lcp
    g = create_compressed_graph(k, fm, marks, initial, trace)
    eg = construct_explicit_graph(g, fm, marks) if explicit else None
    return GraphBundle(g, marks, eg)
