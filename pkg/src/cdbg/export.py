"""Text renderings of an explicit graph: DOT, GFA1 and TSV."""

from __future__ import annotations

from typing import TextIO

from .graph import ExplicitGraph
from .sequence_store import Text


def node_strings(eg: ExplicitGraph, text: Text) -> list[str]:
    """Node strings indexed by id (slot 0 empty), read at each node's first occurrence."""
    out = [""]
    for v in range(1, eg.num_nodes + 1):
        p = int(eg.pos_list(v)[0])
        out.append(text.decode(p, p + int(eg.len[v]) - 1))
    return out


def write_dot(eg: ExplicitGraph, out: TextIO, strings: list[str] | None = None) -> None:
    out.write("digraph cdbg {\n")
    for v in range(1, eg.num_nodes + 1):
        label = strings[v] if strings else f"{v}:{int(eg.len[v])}"
        out.write(f'  {v} [label="{label}"];\n')
    for u, v, _ in eg.edges():
        out.write(f"  {u} -> {v};\n")
    out.write("}\n")


def _strip(s: str) -> str:
    return s.rstrip("#$")


def write_gfa(eg: ExplicitGraph, out: TextIO, strings: list[str], names: tuple[str, ...] = ()) -> None:
    """GFA1 with terminators removed from stop node sequences.

    Each stop node loses its final character, so its overlap with the
    predecessor stays ``k-1`` characters.
    """
    out.write("H\tVN:Z:1.0\n")
    for v in range(1, eg.num_nodes + 1):
        out.write(f"S\t{v}\t{_strip(strings[v])}\n")
    seen = set()
    for u, v, _ in eg.edges():
        if (u, v) not in seen:
            seen.add((u, v))
            out.write(f"L\t{u}\t+\t{v}\t+\t{eg.k - 1}M\n")
    for s, walk in enumerate(eg.walks()):
        name = names[s] if s < len(names) else f"seq{s + 1}"
        out.write(f"P\t{name}\t{','.join(f'{v}+' for v in walk)}\t*\n")


def write_tsv(eg: ExplicitGraph, out: TextIO, strings: list[str] | None = None) -> None:
    header = ["id", "len", "posList", "adjList"] + (["string"] if strings else [])
    out.write("\t".join(header) + "\n")
    for v in range(1, eg.num_nodes + 1):
        row = [str(v), str(int(eg.len[v])), ",".join(map(str, eg.pos_list(v).tolist())),
               ",".join(map(str, eg.adj_list(v).tolist()))]
        if strings:
            row.append(strings[v])
        out.write("\t".join(row) + "\n")
