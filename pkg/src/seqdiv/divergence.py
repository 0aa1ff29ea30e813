"""Information-theoretic divergences and the GJS significance threshold.

Entropies and divergences use base-``k`` logarithms so that GJS lies in
[0, 1] for a ``k``-symbol alphabet. The threshold uses natural logs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from seqdiv.errors import InvalidInputError, InvalidParameterError, NumericFailureError
from seqdiv.markov import ProbDist


@dataclass(frozen=True)
class WeightVector:
    weights: tuple[float, ...]

    def __post_init__(self):
        w = tuple(float(x) for x in self.weights)
        if len(w) < 2:
            raise InvalidParameterError(f"need at least 2 weights, got {len(w)}")
        if any(x < 0 for x in w) or abs(math.fsum(w) - 1.0) > 1e-12:
            raise InvalidParameterError(f"weights must be non-negative and sum to 1: {w}")
        object.__setattr__(self, "weights", w)

    @classmethod
    def equal(cls, m: int) -> "WeightVector":
        return cls((1.0 / m,) * m)

    def __len__(self) -> int:
        return len(self.weights)


@dataclass(frozen=True)
class ThresholdParams:
    k: int
    m: int
    N: int
    alpha: float

    def __post_init__(self):
        if self.k < 2 or self.m < 2:
            raise InvalidParameterError(f"need k >= 2 and m >= 2, got k={self.k}, m={self.m}")
        if self.N < 1:
            raise InvalidParameterError(f"N must be >= 1, got {self.N}")
        if not 0.0 < self.alpha < 1.0:
            raise InvalidParameterError(f"alpha must be in (0, 1), got {self.alpha}")

    @property
    def df(self) -> int:
        return (self.k - 1) * (self.m - 1)


def _vec(p) -> np.ndarray:
    return np.asarray(p.p if isinstance(p, ProbDist) else p, dtype=float)


def _same_alphabet(p, q) -> None:
    if isinstance(p, ProbDist) and isinstance(q, ProbDist):
        if p.alphabet is not None and q.alphabet is not None and p.alphabet != q.alphabet:
            raise InvalidInputError("distributions are over different alphabets")
    if len(_vec(p)) != len(_vec(q)):
        raise InvalidInputError(f"length mismatch: {len(_vec(p))} vs {len(_vec(q))}")


def _plogp(p: np.ndarray) -> np.ndarray:
    # 0 log 0 = 0
    return np.where(p > 0, p * np.log(np.where(p > 0, p, 1.0)), 0.0)


def entropy_k(p) -> float:
    """Shannon entropy in base ``k = len(p)``, clamped to [0, 1]."""
    v = _vec(p)
    if v.size < 2:
        raise InvalidInputError("entropy needs k >= 2")
    h = -_plogp(v).sum() / math.log(v.size)
    return min(max(float(h), 0.0), 1.0)


def gjs(dists: Sequence, weights: WeightVector | Sequence[float] | None = None) -> float:
    """Generalized Jensen-Shannon divergence of ``m`` weighted distributions.

    Entropy of the weighted mixture minus the weighted mean of the
    entropies. Equal weights are used when ``weights`` is None.
    """
    m = len(dists)
    if m < 2:
        raise InvalidInputError(f"need at least 2 distributions, got {m}")
    if weights is None:
        weights = WeightVector.equal(m)
    elif not isinstance(weights, WeightVector):
        weights = WeightVector(tuple(weights))
    if len(weights) != m:
        raise InvalidInputError(f"{m} distributions but {len(weights)} weights")
    for q in dists[1:]:
        _same_alphabet(dists[0], q)
    P = np.vstack([_vec(q) for q in dists])
    w = np.asarray(weights.weights)
    if (P == P[0]).all():
        # the mixture equals every member; avoid rounding residue from w @ P
        return 0.0
    k = P.shape[1]
    mix = w @ P
    mean_h = sum(wi * entropy_k(row) for wi, row in zip(w, P) if wi > 0)
    val = -_plogp(mix).sum() / math.log(k) - mean_h
    return min(max(float(val), 0.0), 1.0)


def kl(p, q) -> float:
    """Kullback-Leibler divergence in base ``k``; ``inf`` when ``q`` misses support of ``p``."""
    _same_alphabet(p, q)
    pv, qv = _vec(p), _vec(q)
    support = pv > 0
    if np.any(qv[support] <= 0):
        return math.inf
    ps, qs = pv[support], qv[support]
    val = np.sum(ps * (np.log(ps) - np.log(qs))) / math.log(pv.size)
    return max(float(val), 0.0)


def cosine_distance(p, q) -> float:
    _same_alphabet(p, q)
    pv, qv = _vec(p), _vec(q)
    npv, nqv = np.linalg.norm(pv), np.linalg.norm(qv)
    if npv == 0 or nqv == 0:
        raise InvalidInputError("cosine distance undefined for a zero vector")
    return min(max(1.0 - float(pv @ qv) / (npv * nqv), 0.0), 1.0)


def regularized_gamma_p(a: float, x: float) -> float:
    """Regularized lower incomplete gamma ``P(a, x)``.

    Power series below ``x < a + 1``, Lentz continued fraction for the
    upper tail otherwise.
    """
    if a <= 0:
        raise InvalidParameterError(f"shape must be positive, got {a}")
    if x <= 0:
        return 0.0
    log_front = a * math.log(x) - x - math.lgamma(a)
    if x < a + 1.0:
        term = total = 1.0 / a
        ap = a
        for _ in range(10_000):
            ap += 1.0
            term *= x / ap
            total += term
            if abs(term) < abs(total) * 1e-17:
                return min(total * math.exp(log_front), 1.0)
        raise NumericFailureError(f"incomplete gamma series did not converge (a={a}, x={x})")
    tiny = 1e-300
    b = x + 1.0 - a
    c = 1.0 / tiny
    d = 1.0 / b
    h = d
    for i in range(1, 10_000):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        d = tiny if abs(d) < tiny else d
        c = b + an / c
        c = tiny if abs(c) < tiny else c
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < 1e-17:
            return max(1.0 - math.exp(log_front) * h, 0.0)
    raise NumericFailureError(f"incomplete gamma continued fraction did not converge (a={a}, x={x})")


def _chi2_pdf(x: float, df: int) -> float:
    a = df / 2.0
    return math.exp((a - 1.0) * math.log(x / 2.0) - x / 2.0 - math.lgamma(a)) / 2.0


def chi_square_quantile(df: int, p: float) -> float:
    """``x`` such that the chi-square CDF with ``df`` degrees of freedom equals ``p``.

    Bisection on a bracket found by doubling, then Newton steps kept inside
    the bracket.
    """
    if df < 1:
        raise InvalidParameterError(f"degrees of freedom must be >= 1, got {df}")
    if not 0.0 < p < 1.0:
        raise InvalidParameterError(f"probability must be in (0, 1), got {p}")
    a = df / 2.0

    def f(x):
        return regularized_gamma_p(a, x / 2.0) - p

    lo, hi = 0.0, max(float(df), 1.0)
    while f(hi) < 0:
        lo, hi = hi, 2.0 * hi
        if hi > 1e8:
            raise NumericFailureError(f"could not bracket chi-square quantile (df={df}, p={p})")
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        if f(mid) < 0:
            lo = mid
        else:
            hi = mid
        if hi - lo < 1e-3 * hi:
            break
    x = 0.5 * (lo + hi)
    for _ in range(100):
        fx = f(x)
        if fx < 0:
            lo = x
        else:
            hi = x
        step = fx / _chi2_pdf(x, df)
        nxt = x - step
        if not lo <= nxt <= hi:
            nxt = 0.5 * (lo + hi)
        if abs(nxt - x) <= 1e-14 * x or hi - lo <= 1e-15 * hi:
            return nxt
        x = nxt
    raise NumericFailureError(f"chi-square quantile did not converge (df={df}, p={p})")


def gjs_threshold(tp: ThresholdParams) -> float:
    """Significance threshold: ``chi2_{df, 1-alpha} / (2 N ln k)`` with ``df = (k-1)(m-1)``."""
    return chi_square_quantile(tp.df, 1.0 - tp.alpha) / (2.0 * tp.N * math.log(tp.k))
