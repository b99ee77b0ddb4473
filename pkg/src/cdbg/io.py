"""Binary container formats for the index and the graphs.

Every file starts with ``b"CDBG"``, a u16 format version and a u8 kind
(0 index, 1 implicit graph, 2 explicit graph). All integers are
little-endian; counts and positions are u64.
"""

from __future__ import annotations

import struct

import numpy as np

from .fm_index import FMIndex
from .graph import ExplicitGraph, ImplicitGraph
from .wavelet import WaveletTree

MAGIC = b"CDBG"
VERSION = 1
KIND_INDEX, KIND_IMPLICIT, KIND_EXPLICIT = 0, 1, 2
KIND_NAMES = {KIND_INDEX: "index", KIND_IMPLICIT: "implicit graph", KIND_EXPLICIT: "explicit graph"}

_U64 = np.dtype("<u8")


class FormatError(ValueError):
    pass


def _u64(*values: int) -> bytes:
    return struct.pack(f"<{len(values)}Q", *values)


def _array(a) -> bytes:
    return np.ascontiguousarray(a, dtype=_U64).tobytes()


class _Reader:
    def __init__(self, data: bytes):
        self.data = memoryview(data)
        self.at = 0

    def take(self, size: int) -> memoryview:
        if self.at + size > len(self.data):
            raise FormatError("truncated file")
        out = self.data[self.at : self.at + size]
        self.at += size
        return out

    def u64(self, count: int = 1):
        vals = struct.unpack(f"<{count}Q", self.take(8 * count))
        return vals[0] if count == 1 else vals

    def array(self, count: int) -> np.ndarray:
        return np.frombuffer(self.take(8 * count), dtype=_U64).astype(np.int64)

    def section(self) -> "_Reader":
        return _Reader(bytes(self.take(self.u64())))

    def done(self) -> None:
        if self.at != len(self.data):
            raise FormatError("trailing bytes")


def _header(kind: int) -> bytes:
    return MAGIC + struct.pack("<HB", VERSION, kind)


def _open(data: bytes, kind: int) -> _Reader:
    r = _Reader(data)
    if bytes(r.take(4)) != MAGIC:
        raise FormatError("not a CDBG file (bad magic)")
    version, found = struct.unpack("<HB", r.take(3))
    if version != VERSION:
        raise FormatError(f"unsupported format version {version}")
    if found != kind:
        raise FormatError(f"expected {KIND_NAMES.get(kind)} file, found {KIND_NAMES.get(found, found)}")
    return r


def peek_kind(data: bytes) -> int:
    if len(data) < 7 or data[:4] != MAGIC:
        raise FormatError("not a CDBG file (bad magic)")
    return data[6]


def _section(payload: bytes) -> bytes:
    return _u64(len(payload)) + payload


def _wavelet_bytes(wt: WaveletTree) -> bytes:
    levels, nwords = wt.words.shape
    return _u64(wt.n, wt.sigma, levels, nwords) + _array(wt.words) + _array(wt.counts)


def _read_wavelet(r: _Reader) -> WaveletTree:
    n, sigma, levels, nwords = r.u64(4)
    words = np.frombuffer(r.take(8 * levels * nwords), dtype=_U64).reshape(levels, nwords).astype(np.uint64)
    counts = r.array((1 << levels) + 1)
    return WaveletTree(n, sigma, words, counts)


def index_to_bytes(fm: FMIndex) -> bytes:
    symbols = fm.symbols
    out = [_header(KIND_INDEX), _u64(fm.n, fm.d, fm.sigma, fm.sample_rate)]
    out.append("".join(symbols).encode("latin-1"))
    levels, nwords = fm.wavelet.words.shape
    out.append(_section(_u64(levels, nwords) + _array(fm.wavelet.words)))
    out.append(_section(_array(fm.wavelet.counts)))
    out.append(_section(_u64(len(fm.samples)) + _array(fm.samples)))
    out.append(_section(_wavelet_bytes(fm.documents) if fm.documents is not None else b""))
    names = b"".join(struct.pack("<I", len(b)) + b for b in (s.encode("utf-8") for s in fm.names))
    out.append(_section(_array(fm.doc_ends) + _u64(len(fm.names)) + names))
    return b"".join(out)


def index_from_bytes(data: bytes) -> FMIndex:
    r = _open(data, KIND_INDEX)
    n, d, sigma, rate = r.u64(4)
    symbols = bytes(r.take(sigma)).decode("latin-1")
    s = r.section()
    levels, nwords = s.u64(2)
    words = np.frombuffer(s.take(8 * levels * nwords), dtype=_U64).reshape(levels, nwords).astype(np.uint64)
    s.done()
    s = r.section()
    counts = s.array((1 << levels) + 1)
    s.done()
    s = r.section()
    samples = s.array(s.u64())
    s.done()
    s = r.section()
    documents = _read_wavelet(s) if len(s.data) else None
    s.done()
    s = r.section()
    doc_ends = s.array(d)
    names = []
    for _ in range(s.u64()):
        (size,) = struct.unpack("<I", s.take(4))
        names.append(bytes(s.take(size)).decode("utf-8"))
    s.done()
    r.done()
    return FMIndex(
        wavelet=WaveletTree(n, sigma, words, counts),
        samples=samples,
        sample_rate=rate,
        alphabet={ch: code for code, ch in enumerate(symbols)},
        doc_ends=doc_ends,
        names=tuple(names),
        documents=documents,
    )


def implicit_to_bytes(g: ImplicitGraph) -> bytes:
    ids = slice(1, g.num_nodes + 1)
    records = np.stack([g.len[ids], g.lb[ids], g.size[ids], g.suffix_lb[ids]], axis=1)
    return b"".join([_header(KIND_IMPLICIT), _u64(g.k, g.right_max, g.left_max, g.d, g.n), _array(records)])


def implicit_from_bytes(data: bytes) -> ImplicitGraph:
    r = _open(data, KIND_IMPLICIT)
    k, rm, lm, d, n = r.u64(5)
    num = rm + lm + d
    records = r.array(4 * num).reshape(num, 4)
    r.done()
    cols = []
    for c in range(4):
        col = np.zeros(num + 1, dtype=np.int64)
        col[1:] = records[:, c]
        cols.append(col)
    return ImplicitGraph(k, n, d, rm, lm, *cols)


def explicit_to_bytes(eg: ExplicitGraph) -> bytes:
    out = [_header(KIND_EXPLICIT), _u64(eg.k, eg.right_max, eg.left_max, eg.d)]
    for v in range(1, eg.num_nodes + 1):
        pos = eg.pos_list(v)
        adj = eg.adj_list(v)
        deltas = np.diff(pos, prepend=0)
        out.append(_u64(int(eg.len[v]), len(pos)) + _array(deltas) + _u64(len(adj)) + _array(adj))
    out.append(_array(eg.start_nodes))
    return b"".join(out)


def explicit_from_bytes(data: bytes) -> ExplicitGraph:
    r = _open(data, KIND_EXPLICIT)
    k, rm, lm, d = r.u64(4)
    num = rm + lm + d
    lens = np.zeros(num + 1, dtype=np.int64)
    pos_off = np.zeros(num + 2, dtype=np.int64)
    adj_off = np.zeros(num + 2, dtype=np.int64)
    pos_parts, adj_parts = [], []
    for v in range(1, num + 1):
        lens[v] = r.u64()
        pos = np.cumsum(r.array(r.u64()))
        adj = r.array(r.u64())
        pos_parts.append(pos)
        adj_parts.append(adj)
        pos_off[v + 1] = pos_off[v] + len(pos)
        adj_off[v + 1] = adj_off[v] + len(adj)
    starts = r.array(d)
    r.done()
    positions = np.concatenate(pos_parts) if pos_parts else np.empty(0, dtype=np.int64)
    adj = np.concatenate(adj_parts) if adj_parts else np.empty(0, dtype=np.int64)
    return ExplicitGraph(k, d, rm, lm, lens, pos_off, positions.astype(np.int64), adj_off,
                         adj.astype(np.int64), starts)


def write_bytes(path, data: bytes) -> None:
    with open(path, "wb") as fh:
        fh.write(data)


def read_bytes(path) -> bytes:
    with open(path, "rb") as fh:
        return fh.read()


def save_index(fm: FMIndex, path) -> None:
    write_bytes(path, index_to_bytes(fm))


def load_index(path) -> FMIndex:
    return index_from_bytes(read_bytes(path))


def save_graph(g: ImplicitGraph | ExplicitGraph, path) -> None:
    write_bytes(path, explicit_to_bytes(g) if isinstance(g, ExplicitGraph) else implicit_to_bytes(g))


def load_graph(path) -> ImplicitGraph | ExplicitGraph:
    data = read_bytes(path)
    kind = peek_kind(data)
    if kind == KIND_IMPLICIT:
        return implicit_from_bytes(data)
    if kind == KIND_EXPLICIT:
        return explicit_from_bytes(data)
    raise FormatError(f"not a graph file ({KIND_NAMES.get(kind, kind)})")
