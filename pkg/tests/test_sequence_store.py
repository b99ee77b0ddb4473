import io

import pytest
from hypothesis import given, settings, strategies as st

from cdbg.sequence_store import IngestError, SequenceStore, concatenate, ingest_fasta


def test_two_records():
    store = ingest_fasta(b">s1\nACG\n>s2\nACT\n")
    assert store.sequences == (("s1", b"ACG"), ("s2", b"ACT"))
    assert store.d == 2


def test_lines_joined_and_uppercased():
    assert ingest_fasta(b">a\nac\ngt\n").sequences == (("a", b"ACGT"),)


def test_header_name_is_first_word_and_streams_work():
    store = ingest_fasta(io.BytesIO(b">chr1 some description\nAC GT\r\n"))
    assert store.sequences == (("chr1", b"ACGT"),)


def test_reads_paths(tmp_path):
    path = tmp_path / "x.fa"
    path.write_bytes(b">x\nAAA\n")
    assert ingest_fasta(path).names == ["x"]
    assert ingest_fasta(str(path)).min_length == 3


@pytest.mark.parametrize("data, needle", [
    (b">a\n\n", "empty record body"),
    (b"", "empty input"),
    (b"ACGT\n>a\nA\n", "before the first"),
    (b">a\nAC-GT\n", "invalid characters"),
    (b">a\nACG1\n", "invalid characters"),
])
def test_ingest_errors(data, needle):
    with pytest.raises(IngestError, match=needle):
        ingest_fasta(data)


def test_error_names_the_record():
    with pytest.raises(IngestError, match="'bad'"):
        ingest_fasta(b">ok\nAC\n>bad\n\n")


def test_running_example_text():
    t = concatenate(SequenceStore.from_strings(["ACTACGTACGTACG"], ["x"]))
    assert t.n == 15
    assert t.d == 1
    assert t.doc_ends.tolist() == [15]
    assert t.decode() == "ACTACGTACGTACG$"
    assert t.codes[-1] == 0


def test_two_sequence_text():
    t = concatenate(SequenceStore.from_strings(["ACG", "ACT"]))
    assert t.decode() == "ACG#ACT$"
    assert t.n == 8
    assert t.doc_ends.tolist() == [4, 8]
    assert t.codes.tolist() == [2, 3, 4, 1, 2, 3, 5, 0]


def test_minimal_text():
    t = concatenate(SequenceStore.from_strings(["A"]))
    assert t.decode() == "A$"
    assert t.n == 2


def test_reserved_codes_and_order():
    t = concatenate(SequenceStore.from_strings(["TNAG"]))
    assert t.alphabet == {"$": 0, "#": 1, "A": 2, "G": 3, "N": 4, "T": 5}
    assert t.sigma == 6


def test_store_invariants():
    with pytest.raises(IngestError):
        SequenceStore(())
    with pytest.raises(IngestError):
        SequenceStore.from_strings(["AC", ""])


@given(st.lists(st.text(alphabet="ACGTNacgt", min_size=1, max_size=30), min_size=1, max_size=6))
@settings(max_examples=200, deadline=None)
def test_round_trip(seqs):
    t = concatenate(SequenceStore.from_strings(seqs))
    assert t.sequences() == [s.upper() for s in seqs]
    assert int((t.codes == 0).sum()) == 1
    assert int((t.codes == 1).sum()) == len(seqs) - 1
    assert t.doc_ends[-1] == t.n
    assert t.codes.max() < t.sigma
    letters = sorted(ch for ch in t.alphabet if ch not in "$#")
    assert [t.alphabet[ch] for ch in letters] == list(range(2, t.sigma))


def test_encode_pattern_marks_unknown():
    t = concatenate(SequenceStore.from_strings(["ACG"]))
    assert t.encode_pattern("aTg#").tolist() == [2, -1, 4, -1]
