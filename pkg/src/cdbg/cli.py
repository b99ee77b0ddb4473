"""``cdbg`` command line: build, graph, search, export."""

from __future__ import annotations

import argparse
import sys

from . import io
from .export import node_strings, write_dot, write_gfa, write_tsv
from .fm_index import DEFAULT_SAMPLE_RATE
from .graph import graph_stats
from .kmer_marking import InvalidParameter, MarkVectors
from .pipeline import build_graph, build_index
from .query import doc_hits, find_nodes_batch
from .sequence_store import IngestError, ingest_fasta

EXIT_OK, EXIT_ERROR, EXIT_IO, EXIT_PARAM, EXIT_DEPENDENCY = 0, 1, 2, 3, 4


class CliError(Exception):
    def __init__(self, message: str, code: int = EXIT_ERROR):
        super().__init__(message)
        self.code = code


def _read(path: str, what: str) -> bytes:
    try:
        return io.read_bytes(path)
    except OSError as exc:
        raise CliError(f"cannot read {what} {path}: {exc.strerror}", EXIT_IO) from exc


def _write(path: str, data: bytes) -> None:
    try:
        io.write_bytes(path, data)
    except OSError as exc:
        raise CliError(f"cannot write {path}: {exc.strerror}", EXIT_IO) from exc


def _load(path: str, what: str, parse):
    data = _read(path, what)
    try:
        return parse(data)
    except io.FormatError as exc:
        raise CliError(f"{path}: {exc}", EXIT_IO) from exc


def cmd_build(args) -> int:
    if args.sample_rate < 1:
        raise CliError("--sample-rate must be >= 1", EXIT_PARAM)
    data = _read(args.input, "input")
    store = ingest_fasta(data)
    fm = build_index(store, sample_rate=args.sample_rate)
    _write(args.output, io.index_to_bytes(fm))
    print(f"n={fm.n}\td={fm.d}\tsigma={fm.sigma}")
    return EXIT_OK


def cmd_graph(args) -> int:
    fm = _load(args.index, "index", io.index_from_bytes)
    try:
        bundle = build_graph(fm, args.k, explicit=args.explicit is not None)
    except InvalidParameter as exc:
        raise CliError(str(exc), EXIT_PARAM) from exc
    _write(args.output, io.implicit_to_bytes(bundle.graph))
    st = graph_stats(bundle.graph)
    if bundle.explicit is not None:
        target = args.explicit or f"{args.output}.explicit"
        _write(target, io.explicit_to_bytes(bundle.explicit))
    print(f"nodes={st.nodes}\tedges={st.edges}\tlongest={st.longest}")
    return EXIT_OK


def _patterns(args) -> list[str]:
    if args.pattern is not None:
        return [args.pattern]
    data = _read(args.patterns, "patterns file").decode("utf-8", "replace")
    return [line.strip() for line in data.splitlines() if line.strip() and not line.startswith(">")]


def cmd_search(args) -> int:
    fm = _load(args.index, "index", io.index_from_bytes)
    g = _load(args.graph, "graph", io.implicit_from_bytes)
    if g.n != fm.n or g.d != fm.d:
        raise CliError("graph was not built from this index", EXIT_PARAM)
    marks = MarkVectors.from_graph(g)
    patterns = _patterns(args)
    ok = [i for i, p in enumerate(patterns) if len(p) >= g.k]
    results = dict(zip(ok, find_nodes_batch([patterns[i] for i in ok], fm, g, marks)))
    out = sys.stdout
    out.write("id\tfound\tpath\twidth\tdocs\n")
    for i, p in enumerate(patterns, 1):
        r = results.get(i - 1)
        if r is None:
            out.write(f"{i}\terror\tpattern shorter than k\t\t\n")
            continue
        hits = doc_hits(r.match_interval, fm) if r.found else None
        path = ",".join(map(str, r.node_ids))
        out.write(f"{i}\t{'true' if r.found else 'false'}\t{path}\t{r.width}\t{hits.format() if hits else ''}\n")
    return EXIT_OK


def cmd_export(args) -> int:
    if args.format == "gfa" and not args.index:
        raise CliError("--format gfa needs --index to decode node strings", EXIT_DEPENDENCY)
    eg = _load(args.graph, "graph", io.explicit_from_bytes)
    strings = names = None
    if args.index:
        fm = _load(args.index, "index", io.index_from_bytes)
        strings = node_strings(eg, fm.extract_text())
        names = fm.names
    out = sys.stdout
    if args.format == "dot":
        write_dot(eg, out, strings)
    elif args.format == "gfa":
        write_gfa(eg, out, strings, names)
    else:
        write_tsv(eg, out, strings)
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_PARAM, f"{self.prog}: error: {message}\n")


def make_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cdbg", description="Compressed de Bruijn graphs from an FM-index.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="index a FASTA file")
    p.add_argument("--input", required=True)
    p.add_argument("--output", required=True)
    p.add_argument("--sample-rate", type=int, default=DEFAULT_SAMPLE_RATE)
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("graph", help="build the compressed graph for one k")
    p.add_argument("--index", required=True)
    p.add_argument("-k", type=int, required=True)
    p.add_argument("--output", required=True)
    p.add_argument("--explicit", nargs="?", const="", default=None, metavar="PATH",
                   help="also write the explicit graph (default: OUTPUT.explicit)")
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("search", help="find node paths and per-sequence counts")
    p.add_argument("--index", required=True)
    p.add_argument("--graph", required=True, help="implicit graph file")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--pattern")
    src.add_argument("--patterns", help="file with one pattern per line")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("export", help="render an explicit graph")
    p.add_argument("--graph", required=True, help="explicit graph file")
    p.add_argument("--format", choices=("dot", "gfa", "tsv"), required=True)
    p.add_argument("--index", help="index used to decode node strings")
    p.set_defaults(func=cmd_export)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = make_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"cdbg: {exc}", file=sys.stderr)
        return exc.code
    except IngestError as exc:
        print(f"cdbg: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
