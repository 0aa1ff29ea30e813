"""Alphabets, symbol sequences, and segmentation of symbol streams."""

from __future__ import annotations

import string
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

from seqdiv.errors import InvalidInputError, InvalidParameterError


@dataclass(frozen=True)
class Alphabet:
    """An ordered vocabulary of ``k >= 2`` distinct symbols.

    Sequences store integer indices into the alphabet; the symbols
    themselves are only used when reading or writing text.
    """

    symbols: tuple[str, ...]
    _index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        symbols = tuple(str(s) for s in self.symbols)
        if len(symbols) < 2:
            raise InvalidParameterError(f"alphabet needs at least 2 symbols, got {len(symbols)}")
        if len(set(symbols)) != len(symbols):
            raise InvalidParameterError(f"alphabet symbols must be distinct: {symbols}")
        object.__setattr__(self, "symbols", symbols)
        object.__setattr__(self, "_index", {s: i for i, s in enumerate(symbols)})

    @classmethod
    def letters(cls, k: int) -> "Alphabet":
        """Alphabet ``a, b, c, ...``; beyond 26 symbols falls back to ``s0, s1, ...``."""
        if k < 2:
            raise InvalidParameterError(f"k must be >= 2, got {k}")
        if k <= 26:
            return cls(tuple(string.ascii_lowercase[:k]))
        return cls(tuple(f"s{i}" for i in range(k)))

    @property
    def k(self) -> int:
        return len(self.symbols)

    def __len__(self) -> int:
        return len(self.symbols)

    def index(self, symbol: str) -> int:
        try:
            return self._index[symbol]
        except KeyError:
            raise InvalidInputError(f"symbol {symbol!r} not in alphabet {self.symbols}") from None

    def encode(self, symbols: Iterable[str]) -> list[int]:
        return [self.index(s) for s in symbols]

    def decode(self, indices: Iterable[int]) -> list[str]:
        return [self.symbols[i] for i in indices]


@dataclass(frozen=True)
class SymbolSequence:
    alphabet: Alphabet
    data: tuple[int, ...]

    def __post_init__(self):
        data = tuple(int(i) for i in self.data)
        k = self.alphabet.k
        for i in data:
            if not 0 <= i < k:
                raise InvalidInputError(f"symbol index {i} outside [0, {k})")
        object.__setattr__(self, "data", data)

    @classmethod
    def from_string(cls, text: str, alphabet: Alphabet | None = None, k: int | None = None):
        """Build from single-character symbols, e.g. ``SymbolSequence.from_string("abab", k=2)``."""
        if alphabet is None:
            alphabet = Alphabet.letters(k if k is not None else max(2, len(set(text))))
        return cls(alphabet, tuple(alphabet.encode(text)))

    @property
    def k(self) -> int:
        return self.alphabet.k

    def __len__(self) -> int:
        return len(self.data)

    def __iter__(self):
        return iter(self.data)

    def __getitem__(self, i):
        return self.data[i]

    def __str__(self) -> str:
        return "".join(self.alphabet.decode(self.data))


def _check_window(n: int) -> None:
    if n < 2:
        raise InvalidParameterError(f"sequence length n must be >= 2, got {n}")


def segment_stream(
    stream: Sequence[int], n: int, alphabet: Alphabet | None = None
) -> tuple[list[SymbolSequence], list[int]]:
    """Split a symbol stream into consecutive sequences of exactly ``n`` symbols.

    Returns the sequences in arrival order and the unconsumed residual
    (``len(stream) % n`` trailing symbols). The residual is never padded.
    """
    _check_window(n)
    stream = [int(s) for s in stream]
    if alphabet is None:
        alphabet = Alphabet.letters(max(2, max(stream, default=0) + 1))
    full = len(stream) - len(stream) % n
    seqs = [SymbolSequence(alphabet, tuple(stream[i : i + n])) for i in range(0, full, n)]
    return seqs, stream[full:]


class Segmenter:
    """Incremental form of :func:`segment_stream` that carries the residual between calls."""

    def __init__(self, n: int, alphabet: Alphabet):
        _check_window(n)
        self.n = n
        self.alphabet = alphabet
        self.residual: list[int] = []
        self.consumed = 0

    def feed(self, symbols: Iterable[int]) -> list[SymbolSequence]:
        seqs, self.residual = segment_stream(self.residual + list(symbols), self.n, self.alphabet)
        self.consumed += len(seqs) * self.n
        return seqs


def map_point_to_symbol_index(data_point_index: int, segment_size: int) -> int:
    """Map a 1-based raw data index to the 1-based index of the symbol containing it."""
    if data_point_index < 1 or segment_size < 1:
        raise InvalidParameterError(
            f"indices are 1-based: got data_point_index={data_point_index}, segment_size={segment_size}"
        )
    return (data_point_index - 1) // segment_size + 1


# Symbol stream files: optional "#alphabet: a,b,c" header, then one symbol
# (token or integer index) per line.


def read_symbol_stream(path: str | Path, alphabet: Alphabet | None = None) -> tuple[Alphabet, list[int]]:
    tokens = []
    header = None
    for raw in Path(path).read_text().splitlines():
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if body.lower().startswith("alphabet:"):
                header = Alphabet(tuple(s.strip() for s in body.split(":", 1)[1].split(",") if s.strip()))
            continue
        tokens.append(line)
    if alphabet is None:
        alphabet = header
    if alphabet is None:
        if all(t.lstrip("-").isdigit() for t in tokens):
            alphabet = Alphabet.letters(max(2, max((int(t) for t in tokens), default=0) + 1))
        else:
            alphabet = Alphabet(tuple(sorted(set(tokens))) if len(set(tokens)) >= 2 else ("a", "b"))
    indices = []
    for t in tokens:
        if t in alphabet._index:
            indices.append(alphabet.index(t))
        elif t.lstrip("-").isdigit():
            i = int(t)
            if not 0 <= i < alphabet.k:
                raise InvalidInputError(f"symbol index {i} outside [0, {alphabet.k})")
            indices.append(i)
        else:
            raise InvalidInputError(f"unknown symbol {t!r} in {path}")
    return alphabet, indices


def write_symbol_stream(path: str | Path, alphabet: Alphabet, indices: Iterable[int]) -> None:
    lines = ["#alphabet: " + ",".join(alphabet.symbols)]
    lines.extend(alphabet.symbols[i] for i in indices)
    Path(path).write_text("\n".join(lines) + "\n")
