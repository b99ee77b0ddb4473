"""FASTA ingestion and construction of the concatenated text.

The text for sequences S1..Sd is ``S1 # S2 # ... # Sd $`` over dense codes:
the sentinel ``$`` is code 0, the separator ``#`` is code 1 and the
remaining characters follow in raw byte order. Both reserved symbols are
synthetic, so no input byte can collide with them.
"""

from __future__ import annotations

import io
import os
from dataclasses import dataclass, field
from typing import BinaryIO, Iterable

import numpy as np

SENTINEL = 0
SEPARATOR = 1
SENTINEL_CHAR = "$"
SEPARATOR_CHAR = "#"


class IngestError(ValueError):
    """Raised for malformed or unusable sequence input."""


@dataclass(frozen=True)
class SequenceStore:
    sequences: tuple[tuple[str, bytes], ...]

    def __post_init__(self):
        if not self.sequences:
            raise IngestError("no sequences")
        for name, data in self.sequences:
            if not data:
                raise IngestError(f"record {name!r}: empty sequence")
            bad = bytes(sorted(set(data) - _ALLOWED))
            if bad:
                raise IngestError(f"record {name!r}: invalid characters {bad.decode('latin-1')!r}")

    @classmethod
    def from_strings(cls, seqs: Iterable, names: Iterable[str] | None = None) -> "SequenceStore":
        seqs = [s.encode("ascii") if isinstance(s, str) else bytes(s) for s in seqs]
        if names is None:
            names = [f"seq{i + 1}" for i in range(len(seqs))]
        return cls(tuple(zip(names, (s.upper() for s in seqs))))

    @property
    def d(self) -> int:
        return len(self.sequences)

    @property
    def names(self) -> list[str]:
        return [name for name, _ in self.sequences]

    @property
    def min_length(self) -> int:
        return min(len(data) for _, data in self.sequences)


_ALLOWED = frozenset(b"ABCDEFGHIJKLMNOPQRSTUVWXYZ")


@dataclass(frozen=True, eq=False)
class Text:
    """Concatenated, densely coded text ``S`` of length ``n``."""

    codes: np.ndarray  # uint8, length n, codes[n-1] == SENTINEL
    alphabet: dict[str, int]
    doc_ends: np.ndarray  # int64, 1-based end positions, length d
    names: tuple[str, ...] = field(default=())

    @property
    def n(self) -> int:
        return len(self.codes)

    @property
    def sigma(self) -> int:
        return len(self.alphabet)

    @property
    def d(self) -> int:
        return len(self.doc_ends)

    @property
    def symbols(self) -> list[str]:
        out = [""] * self.sigma
        for ch, code in self.alphabet.items():
            out[code] = ch
        return out

    def decode(self, start: int = 1, stop: int | None = None) -> str:
        """Characters at 1-based positions ``start..stop`` (inclusive)."""
        stop = self.n if stop is None else stop
        table = np.array([ord(c) for c in self.symbols], dtype=np.uint8)
        return table[self.codes[start - 1 : stop]].tobytes().decode("ascii")

    def sequences(self) -> list[str]:
        """Split the text back into the ingested sequences."""
        out = []
        begin = 1
        for end in self.doc_ends:
            out.append(self.decode(begin, int(end) - 1))
            begin = int(end) + 1
        return out

    def encode_pattern(self, pattern: str | bytes) -> np.ndarray:
        """Map a pattern to codes; characters outside the alphabet become -1."""
        if isinstance(pattern, bytes):
            pattern = pattern.decode("ascii")
        pattern = pattern.upper()
        return encode_with(self.alphabet, pattern)


def encode_with(alphabet: dict[str, int], pattern: str) -> np.ndarray:
    out = np.empty(len(pattern), dtype=np.int64)
    for i, ch in enumerate(pattern):
        code = alphabet.get(ch, -1)
        # the reserved symbols never occur inside a pattern
        out[i] = code if code > SEPARATOR else -1
    return out


def ingest_fasta(source) -> SequenceStore:
    """Parse FASTA from a path, bytes, or binary stream.

    Record bodies are uppercased with whitespace removed; record order is
    preserved. The record name is the first word of its header line.
    """
    if isinstance(source, (bytes, bytearray)):
        stream: BinaryIO = io.BytesIO(source)
    elif isinstance(source, (str, os.PathLike)):
        with open(source, "rb") as fh:
            return ingest_fasta(fh.read())
    else:
        stream = source

    records: list[tuple[str, bytearray]] = []
    for lineno, line in enumerate(stream, 1):
        line = line.strip()
        if line.startswith(b">"):
            header = line[1:].decode("utf-8", "replace").split()
            name = header[0] if header else f"record{len(records) + 1}"
            records.append((name, bytearray()))
        elif line:
            if not records:
                raise IngestError(f"line {lineno}: sequence data before the first '>' header")
            records[-1][1].extend(b"".join(line.split()).upper())
    if not records:
        raise IngestError("empty input: no FASTA records")
    for name, body in records:
        if not body:
            raise IngestError(f"record {name!r}: empty record body")
    return SequenceStore(tuple((name, bytes(body)) for name, body in records))


def concatenate(store: SequenceStore) -> Text:
    letters = sorted(set().union(*(set(data) for _, data in store.sequences)))
    alphabet = {SENTINEL_CHAR: SENTINEL, SEPARATOR_CHAR: SEPARATOR}
    lut = np.zeros(256, dtype=np.uint8)
    for code, byte in enumerate(letters, start=2):
        alphabet[chr(byte)] = code
        lut[byte] = code

    n = sum(len(data) + 1 for _, data in store.sequences)
    codes = np.empty(n, dtype=np.uint8)
    doc_ends = np.empty(store.d, dtype=np.int64)
    at = 0
    for j, (_, data) in enumerate(store.sequences):
        raw = np.frombuffer(data, dtype=np.uint8)
        codes[at : at + len(raw)] = lut[raw]
        at += len(raw)
        codes[at] = SEPARATOR
        at += 1
        doc_ends[j] = at
    codes[n - 1] = SENTINEL
    return Text(codes=codes, alphabet=alphabet, doc_ends=doc_ends, names=tuple(store.names))
