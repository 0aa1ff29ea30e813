"""First-order Markov summaries of symbol sequences.

A sequence is turned into a transition matrix, made ergodic with PageRank
style teleportation (the "Google matrix"), and reduced to its stationary
distribution. Relative symbol frequencies are provided as the order-blind
alternative.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from seqdiv.errors import InvalidInputError, InvalidParameterError, NumericFailureError
from seqdiv.symbolic import Alphabet, SymbolSequence

DEFAULT_DAMPING = 0.99
DEFAULT_TOL = 1e-12
DEFAULT_MAX_ITER = 10_000

SV = "SV"
FV = "FV"


@dataclass(frozen=True, eq=False)
class TransitionMatrix:
    """Row-stochastic transition estimate; rows without outgoing transitions are zero and flagged dangling."""

    h: np.ndarray
    dangling: np.ndarray

    @property
    def k(self) -> int:
        return self.h.shape[0]


@dataclass(frozen=True, eq=False)
class GoogleMatrix:
    g: np.ndarray
    d: float

    @property
    def k(self) -> int:
        return self.g.shape[0]


@dataclass(frozen=True, eq=False)
class ProbDist:
    """A distribution over an alphabet, tagged as steady-state (SV) or frequency (FV)."""

    p: np.ndarray
    kind: str = FV
    alphabet: Alphabet | None = None

    def __post_init__(self):
        p = np.asarray(self.p, dtype=float)
        if p.ndim != 1 or p.size < 2:
            raise InvalidInputError(f"distribution must be a vector of length >= 2, got shape {p.shape}")
        if np.any(p < 0) or abs(p.sum() - 1.0) > 1e-9:
            raise InvalidInputError(f"not a probability vector: {p}")
        if self.alphabet is not None and self.alphabet.k != p.size:
            raise InvalidInputError(f"alphabet size {self.alphabet.k} != distribution length {p.size}")
        p.setflags(write=False)
        object.__setattr__(self, "p", p)

    @property
    def k(self) -> int:
        return self.p.size

    def __array__(self, dtype=None, copy=None):
        return self.p if dtype is None else self.p.astype(dtype)

    def __len__(self) -> int:
        return self.p.size


def count_transitions(seq: SymbolSequence) -> TransitionMatrix:
    if len(seq) < 1:
        raise InvalidInputError("cannot estimate transitions from an empty sequence")
    k = seq.k
    counts = np.zeros((k, k))
    data = np.asarray(seq.data, dtype=np.intp)
    np.add.at(counts, (data[:-1], data[1:]), 1.0)
    totals = counts.sum(axis=1)
    dangling = (totals == 0).astype(float)
    h = np.divide(counts, totals[:, None], out=np.zeros_like(counts), where=totals[:, None] > 0)
    return TransitionMatrix(h, dangling)


def google_matrix(t: TransitionMatrix, d: float = DEFAULT_DAMPING) -> GoogleMatrix:
    """``G = d H + (d a + (1 - d) e) e^T / k`` with ``a`` the dangling indicator."""
    if not 0.0 < d < 1.0:
        raise InvalidParameterError(f"damping must be in (0, 1), got {d}")
    k = t.k
    teleport = (d * t.dangling + (1.0 - d)) / k
    return GoogleMatrix(d * t.h + teleport[:, None], d)


def steady_state(
    g: GoogleMatrix,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
    alphabet: Alphabet | None = None,
) -> ProbDist:
    """Left fixed point of ``g`` by power iteration from the uniform vector.

    Stops once the L1 residual ``|pi G - pi|`` drops below ``tol``.
    """
    G = g.g
    k = G.shape[0]
    pi = np.full(k, 1.0 / k)
    for _ in range(max_iter):
        nxt = pi @ G
        nxt /= nxt.sum()
        if np.abs(nxt - pi).sum() < tol:
            return ProbDist(nxt, SV, alphabet)
        pi = nxt
    raise NumericFailureError(f"power iteration did not converge in {max_iter} steps")


def steady_state_vector(seq: SymbolSequence, d: float = DEFAULT_DAMPING, tol: float = DEFAULT_TOL) -> ProbDist:
    """Convenience pipeline: sequence -> transitions -> Google matrix -> SV."""
    return steady_state(google_matrix(count_transitions(seq), d), tol=tol, alphabet=seq.alphabet)


def frequency_vector(seq: SymbolSequence) -> ProbDist:
    if len(seq) < 1:
        raise InvalidInputError("cannot count symbols of an empty sequence")
    counts = np.bincount(np.asarray(seq.data, dtype=np.intp), minlength=seq.k).astype(float)
    return ProbDist(counts / counts.sum(), FV, seq.alphabet)


def dump_matrix_csv(path: str | Path, matrix: np.ndarray, alphabet: Alphabet) -> None:
    """Debug dump: header row of symbols, then one row per state in alphabet order."""
    rows = [",".join(alphabet.symbols)]
    for row in np.atleast_2d(matrix):
        rows.append(",".join(repr(float(v)) for v in row))
    Path(path).write_text("\n".join(rows) + "\n")
