import pytest

from cdbg import io
from cdbg.cli import main

from helpers import EX_BWT, EX_NODES, RUNNING


@pytest.fixture
def workdir(tmp_path):
    (tmp_path / "run.fa").write_text(f">x\n{RUNNING}\n")
    (tmp_path / "two.fa").write_text(">a\nGCTGAGCGGCGAACCACTAGA\n>b\nAAGGTTCAGACCCCGGAGC\n")
    return tmp_path


def _build(workdir, name="run", k=3, explicit=True):
    assert main(["build", "--input", str(workdir / f"{name}.fa"), "--output", str(workdir / f"{name}.idx")]) == 0
    args = ["graph", "--index", str(workdir / f"{name}.idx"), "-k", str(k), "--output", str(workdir / f"{name}.g")]
    assert main(args + (["--explicit"] if explicit else [])) == 0


def test_build_and_graph(workdir, capsys):
    _build(workdir)
    out = capsys.readouterr().out.splitlines()
    assert out[0] == "n=15\td=1\tsigma=6"
    assert out[1] == "nodes=4\tedges=6\tlongest=4"
    fm = io.load_index(workdir / "run.idx")
    assert "".join(fm.symbols[c] for c in fm.bwt().tolist()) == EX_BWT
    g = io.load_graph(workdir / "run.g")
    assert [(n.len, n.lb, n.size, n.suffix_lb) for n in g.nodes()] == EX_NODES
    assert io.load_graph(workdir / "run.g.explicit").walks() == [[2, 1, 3, 1, 3, 1, 4]]


def test_two_records(workdir, capsys):
    _build(workdir, "two")
    assert capsys.readouterr().out.startswith("n=42\td=2\t")


def test_graph_is_deterministic(workdir):
    _build(workdir)
    first = (workdir / "run.g").read_bytes(), (workdir / "run.g.explicit").read_bytes()
    _build(workdir)
    assert ((workdir / "run.g").read_bytes(), (workdir / "run.g.explicit").read_bytes()) == first


def test_explicit_custom_path(workdir):
    _build(workdir, explicit=False)
    assert not (workdir / "run.g.explicit").exists()
    assert main(["graph", "--index", str(workdir / "run.idx"), "-k", "3", "--output", str(workdir / "g"),
                 "--explicit", str(workdir / "e")]) == 0
    assert io.load_graph(workdir / "e").num_nodes == 4


def test_invalid_k(workdir, capsys):
    _build(workdir)
    capsys.readouterr()
    code = main(["graph", "--index", str(workdir / "run.idx"), "-k", "1", "--output", str(workdir / "x")])
    assert code == 3
    assert "k must be >= 2" in capsys.readouterr().err
    assert main(["graph", "--index", str(workdir / "run.idx"), "-k", "15", "--output", str(workdir / "x")]) == 3


def test_search(workdir, capsys):
    _build(workdir)
    (workdir / "p.txt").write_text("ACTACG\nACGG\nAC\n\nTACGTACG\n")
    capsys.readouterr()
    assert main(["search", "--index", str(workdir / "run.idx"), "--graph", str(workdir / "run.g"),
                 "--patterns", str(workdir / "p.txt")]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "id\tfound\tpath\twidth\tdocs"
    assert lines[1] == "1\ttrue\t2,1\t1\t1:1"
    assert lines[2] == "2\tfalse\t\t0\t"
    assert lines[3].startswith("3\terror\tpattern shorter than k")
    assert lines[4] == "4\ttrue\t1,3,1\t2\t1:2"


def test_search_doc_counts(workdir, capsys):
    _build(workdir, "two")
    capsys.readouterr()
    main(["search", "--index", str(workdir / "two.idx"), "--graph", str(workdir / "two.g"), "--pattern", "ACC"])
    assert capsys.readouterr().out.splitlines()[1].endswith("\t1:1,2:1")


def test_export_formats(workdir, capsys):
    _build(workdir)
    capsys.readouterr()
    ex = str(workdir / "run.g.explicit")
    assert main(["export", "--graph", ex, "--format", "tsv"]) == 0
    rows = capsys.readouterr().out.splitlines()
    assert rows == ["id\tlen\tposList\tadjList", "1\t4\t3,7,11\t3,3,4", "2\t4\t1\t1", "3\t4\t5,9\t1,1", "4\t3\t13\t"]

    assert main(["export", "--graph", ex, "--format", "dot"]) == 0
    dot = capsys.readouterr().out
    assert dot.count("->") == 6
    assert '1 [label="1:4"]' in dot

    assert main(["export", "--graph", ex, "--format", "dot", "--index", str(workdir / "run.idx")]) == 0
    assert '2 [label="ACTA"]' in capsys.readouterr().out

    assert main(["export", "--graph", ex, "--format", "gfa", "--index", str(workdir / "run.idx")]) == 0
    gfa = capsys.readouterr().out.splitlines()
    assert "S\t4\tCG" in gfa
    assert "L\t1\t+\t3\t+\t2M" in gfa
    assert sum(1 for line in gfa if line.startswith("L")) == 4
    assert "P\tx\t2+,1+,3+,1+,3+,1+,4+\t*" in gfa


def test_export_single_node(tmp_path, capsys):
    (tmp_path / "a.fa").write_text(">a\nACGTTGCA\n")
    main(["build", "--input", str(tmp_path / "a.fa"), "--output", str(tmp_path / "a.idx")])
    main(["graph", "--index", str(tmp_path / "a.idx"), "-k", "3", "--output", str(tmp_path / "a.g"), "--explicit"])
    capsys.readouterr()
    main(["export", "--graph", str(tmp_path / "a.g.explicit"), "--format", "dot"])
    dot = capsys.readouterr().out
    assert dot.count("label") == 1 and "->" not in dot


def test_error_codes(workdir, capsys):
    _build(workdir)
    ex = str(workdir / "run.g.explicit")
    assert main(["export", "--graph", ex, "--format", "gfa"]) == 4
    assert main(["build", "--input", str(workdir / "run.fa"), "--output", str(workdir / "no" / "x")]) == 2
    assert main(["build", "--input", str(workdir / "missing.fa"), "--output", str(workdir / "x")]) == 2
    assert main(["export", "--graph", str(workdir / "run.g"), "--format", "tsv"]) == 2
    (workdir / "bad.fa").write_text(">a\n\n")
    assert main(["build", "--input", str(workdir / "bad.fa"), "--output", str(workdir / "x")]) == 1
    assert "empty record body" in capsys.readouterr().err
    with pytest.raises(SystemExit) as exc:
        main(["graph", "--index", "x"])
    assert exc.value.code == 3


def test_module_entry_point():
    import subprocess
    import sys

    proc = subprocess.run([sys.executable, "-m", "cdbg.cli", "--help"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert "build" in proc.stdout and "export" in proc.stdout
