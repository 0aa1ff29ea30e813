"""Alignment- and substitution-based distances between symbol sequences."""

from __future__ import annotations

import math
from typing import Callable, Sequence

from seqdiv.errors import InvalidInputError, InvalidParameterError


def _data(s) -> Sequence:
    return s.data if hasattr(s, "data") else s


def _nonempty(*seqs) -> None:
    for s in seqs:
        if len(s) == 0:
            raise InvalidInputError("sequence must be non-empty")


def levenshtein(s1, s2) -> int:
    """Minimum number of insertions, deletions and substitutions turning ``s1`` into ``s2``."""
    a, b = _data(s1), _data(s2)
    if len(a) < len(b):
        a, b = b, a
    prev = list(range(len(b) + 1))
    for i, x in enumerate(a, 1):
        cur = [i]
        for j, y in enumerate(b, 1):
            cur.append(min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (x != y)))
        prev = cur
    return prev[-1]


def nlevd(s1, s2) -> float:
    _nonempty(s1, s2)
    return levenshtein(s1, s2) / math.sqrt(len(s1) * len(s2))


def lcs_length(s1, s2) -> int:
    """Length of the longest common (not necessarily contiguous) subsequence."""
    a, b = _data(s1), _data(s2)
    if len(a) < len(b):
        a, b = b, a
    prev = [0] * (len(b) + 1)
    for x in a:
        cur = [0]
        for j, y in enumerate(b, 1):
            cur.append(prev[j - 1] + 1 if x == y else max(prev[j], cur[j - 1]))
        prev = cur
    return prev[-1]


def one_minus_nlcs(s1, s2) -> float:
    _nonempty(s1, s2)
    return max(1.0 - lcs_length(s1, s2) / math.sqrt(len(s1) * len(s2)), 0.0)


def p_distance(s1, s2) -> float:
    """Fraction of aligned positions whose symbols differ."""
    a, b = _data(s1), _data(s2)
    if len(a) != len(b):
        raise InvalidInputError(f"p-distance needs equal lengths, got {len(a)} and {len(b)}")
    _nonempty(a)
    return sum(x != y for x, y in zip(a, b)) / len(a)


def jukes_cantor(s1, s2, k: int | None = None) -> float:
    """Substitution-corrected p-distance for a ``k``-symbol alphabet.

    Saturates to ``inf`` once the p-distance reaches ``(k - 1) / k``.
    """
    if k is None:
        k = getattr(s1, "k", None)
    if k is None or k < 2:
        raise InvalidParameterError(f"alphabet size k must be >= 2, got {k}")
    dp = p_distance(s1, s2)
    arg = 1.0 - k / (k - 1) * dp
    if arg <= 0.0:
        return math.inf
    return max(-(k - 1) / k * math.log(arg), 0.0)


def pairwise_sum(measure: Callable, seqs: Sequence) -> float:
    """Sum of ``measure`` over adjacent pairs ``(S1, S2), (S2, S3), ...``."""
    if len(seqs) < 2:
        raise InvalidInputError(f"need at least 2 sequences, got {len(seqs)}")
    return math.fsum(measure(a, b) for a, b in zip(seqs, seqs[1:]))
