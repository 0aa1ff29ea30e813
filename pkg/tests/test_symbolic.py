import pytest
from hypothesis import given, strategies as st

from seqdiv import (
    Alphabet,
    InvalidInputError,
    InvalidParameterError,
    Segmenter,
    SymbolSequence,
    map_point_to_symbol_index,
    segment_stream,
)
from seqdiv.symbolic import read_symbol_stream, write_symbol_stream


def test_alphabet_rejects_bad_symbols():
    with pytest.raises(InvalidParameterError):
        Alphabet(("a",))
    with pytest.raises(InvalidParameterError):
        Alphabet(("a", "a"))


def test_alphabet_letters_and_large_k():
    assert Alphabet.letters(3).symbols == ("a", "b", "c")
    big = Alphabet.letters(30)
    assert big.k == 30 and big.symbols[29] == "s29"


def test_sequence_rejects_out_of_range_index():
    with pytest.raises(InvalidInputError):
        SymbolSequence(Alphabet.letters(2), (0, 2))


def test_sequence_string_round_trip():
    s = SymbolSequence.from_string("abca", k=3)
    assert s.data == (0, 1, 2, 0)
    assert str(s) == "abca"


@pytest.mark.parametrize(
    "length, n_seqs, residual",
    [(200, 2, 0), (250, 2, 50), (0, 0, 0)],
)
def test_segment_stream_counts(length, n_seqs, residual):
    stream = [i % 3 for i in range(length)]
    seqs, rest = segment_stream(stream, 100, Alphabet.letters(3))
    assert len(seqs) == n_seqs
    assert all(len(s) == 100 for s in seqs)
    assert len(rest) == residual


def test_segment_stream_rejects_short_window():
    with pytest.raises(InvalidParameterError):
        segment_stream([0, 1, 0], 1)


streams = st.lists(st.integers(0, 3), max_size=300)


@given(streams, st.integers(2, 40))
def test_segmentation_reassembles_input(stream, n):
    seqs, rest = segment_stream(stream, n, Alphabet.letters(4))
    flat = [x for s in seqs for x in s.data] + rest
    assert flat == stream


@given(streams, st.integers(2, 40), st.integers(0, 300))
def test_segmentation_is_prefix_stable(stream, n, cut):
    cut = min(cut, len(stream))
    whole, _ = segment_stream(stream, n, Alphabet.letters(4))
    seg = Segmenter(n, Alphabet.letters(4))
    pieces = seg.feed(stream[:cut]) + seg.feed(stream[cut:])
    assert [s.data for s in pieces] == [s.data for s in whole]


@pytest.mark.parametrize("point, size, expected", [(901, 3, 301), (1, 1, 1), (6, 3, 2), (1000, 2, 500)])
def test_map_point_to_symbol_index(point, size, expected):
    assert map_point_to_symbol_index(point, size) == expected


def test_map_point_rejects_zero():
    with pytest.raises(InvalidParameterError):
        map_point_to_symbol_index(0, 3)
    with pytest.raises(InvalidParameterError):
        map_point_to_symbol_index(5, 0)


@given(st.integers(1, 10_000), st.integers(1, 10_000), st.integers(1, 20))
def test_map_point_is_monotone(a, b, size):
    lo, hi = sorted((a, b))
    assert map_point_to_symbol_index(lo, size) <= map_point_to_symbol_index(hi, size)


def test_symbol_stream_file_round_trip(tmp_path):
    alpha = Alphabet.letters(3)
    path = tmp_path / "s.sym"
    write_symbol_stream(path, alpha, [0, 2, 1, 1])
    got_alpha, got = read_symbol_stream(path)
    assert got_alpha == alpha and got == [0, 2, 1, 1]


def test_symbol_stream_accepts_integer_indices(tmp_path):
    path = tmp_path / "s.sym"
    path.write_text("#alphabet: x,y,z\n0\nz\n1\n")
    alpha, got = read_symbol_stream(path)
    assert alpha.symbols == ("x", "y", "z")
    assert got == [0, 2, 1]


def test_symbol_stream_unknown_token(tmp_path):
    path = tmp_path / "s.sym"
    path.write_text("#alphabet: a,b\na\nq\n")
    with pytest.raises(InvalidInputError):
        read_symbol_stream(path)
