"""Compressed de Bruijn graphs of pan-genomes built from an FM-index."""

from .fm_index import FMIndex
from .graph import (ExplicitGraph, GraphBuildError, GraphStats, ImplicitGraph, construct_explicit_graph,
                    create_compressed_graph, graph_stats)
from .kmer_marking import InvalidParameter, MarkVectors, TruncatedLcp, create_bit_vectors, truncated_lcp
from .pipeline import GraphBundle, build_graph, build_index
from .query import DocHits, NodePath, PatternTooShort, doc_hits, find_nodes, find_nodes_batch, node_occurrences
from .sequence_store import IngestError, SequenceStore, Text, concatenate, ingest_fasta
from .suffix import build_bwt, build_document_array, build_suffix_array

__all__ = [
    "DocHits", "ExplicitGraph", "FMIndex", "GraphBuildError", "GraphBundle", "GraphStats", "ImplicitGraph",
    "IngestError", "InvalidParameter", "MarkVectors", "NodePath", "PatternTooShort", "SequenceStore", "Text",
    "TruncatedLcp", "build_bwt", "build_document_array", "build_graph", "build_index", "build_suffix_array",
    "concatenate", "construct_explicit_graph", "create_bit_vectors", "create_compressed_graph", "doc_hits",
    "find_nodes", "find_nodes_batch", "graph_stats", "ingest_fasta", "node_occurrences", "truncated_lcp",
]
