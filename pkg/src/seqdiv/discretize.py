"""Turn real-valued series into symbol sequences.

Two discretizers are provided: SAX (z-normalize, piecewise aggregate
approximation, then equiprobable Gaussian regions) and fixed cut-points
applied to raw values.
"""

from __future__ import annotations

import csv
import math
from bisect import bisect_right
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from seqdiv.errors import DegenerateInputError, InvalidInputError, InvalidParameterError
from seqdiv.symbolic import Alphabet, SymbolSequence


@dataclass(frozen=True)
class SaxConfig:
    k: int
    segment_size: int = 1

    def __post_init__(self):
        if self.k < 2:
            raise InvalidParameterError(f"SAX alphabet size must be >= 2, got {self.k}")
        if self.segment_size < 1:
            raise InvalidParameterError(f"segment_size must be >= 1, got {self.segment_size}")


@dataclass(frozen=True)
class CutPointConfig:
    cutpoints: tuple[float, ...]

    def __post_init__(self):
        cuts = tuple(float(c) for c in self.cutpoints)
        if not cuts:
            raise InvalidParameterError("at least one cut-point is required")
        if any(b <= a for a, b in zip(cuts, cuts[1:])):
            raise InvalidParameterError(f"cut-points must be strictly increasing: {cuts}")
        object.__setattr__(self, "cutpoints", cuts)

    @property
    def k(self) -> int:
        return len(self.cutpoints) + 1


def znormalize(series: Sequence[float]) -> np.ndarray:
    """Shift to mean 0 and scale to population standard deviation 1."""
    x = np.asarray(series, dtype=float)
    if x.size < 2:
        raise InvalidInputError(f"need at least 2 points to normalize, got {x.size}")
    mu = x.mean()
    sd = x.std()
    if not sd > 0 or sd < 1e-12 * max(1.0, abs(mu)):
        raise DegenerateInputError("series has zero variance")
    return (x - mu) / sd


def paa(series: Sequence[float], segment_size: int) -> np.ndarray:
    """Means of consecutive ``segment_size`` blocks; a trailing partial block is dropped."""
    if segment_size < 1:
        raise InvalidParameterError(f"segment_size must be >= 1, got {segment_size}")
    x = np.asarray(series, dtype=float)
    m = x.size // segment_size
    if segment_size == 1:
        return x.copy()
    return x[: m * segment_size].reshape(m, segment_size).mean(axis=1)


# Acklam's rational approximation to the standard normal quantile.
_A = (-3.969683028665376e01, 2.209460984245205e02, -2.759285104469687e02,
      1.383577518672690e02, -3.066479806614716e01, 2.506628277459239e00)
_B = (-5.447609879822406e01, 1.615858368580409e02, -1.556989798598866e02,
      6.680131188771972e01, -1.328068155288572e01)
_C = (-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e00,
      -2.549732539343734e00, 4.374664141464968e00, 2.938163982698783e00)
_D = (7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e00,
      3.754408661907416e00)
_P_LOW = 0.02425


def _acklam(p: float) -> float:
    if p < _P_LOW:
        q = math.sqrt(-2.0 * math.log(p))
        return (((((_C[0] * q + _C[1]) * q + _C[2]) * q + _C[3]) * q + _C[4]) * q + _C[5]) / (
            (((_D[0] * q + _D[1]) * q + _D[2]) * q + _D[3]) * q + 1.0
        )
    q = p - 0.5
    r = q * q
    return (((((_A[0] * r + _A[1]) * r + _A[2]) * r + _A[3]) * r + _A[4]) * r + _A[5]) * q / (
        ((((_B[0] * r + _B[1]) * r + _B[2]) * r + _B[3]) * r + _B[4]) * r + 1.0
    )


def normal_quantile(p: float) -> float:
    """Inverse standard normal CDF.

    The rational approximation (relative error ~1e-9) is polished with one
    Halley step against ``erfc``, which brings it to near machine precision.
    Computed on the lower half and mirrored so that
    ``normal_quantile(1 - p) == -normal_quantile(p)`` exactly.
    """
    if not 0.0 < p < 1.0:
        raise InvalidParameterError(f"probability must be in (0, 1), got {p}")
    if p > 0.5:
        return -normal_quantile(1.0 - p)
    if p == 0.5:
        return 0.0
    x = _acklam(p)
    e = 0.5 * math.erfc(-x / math.sqrt(2.0)) - p
    u = e * math.sqrt(2.0 * math.pi) * math.exp(0.5 * x * x)
    return x - u / (1.0 + 0.5 * x * u)


def sax_breakpoints(k: int) -> list[float]:
    """The ``k - 1`` cut-points splitting N(0, 1) into ``k`` equiprobable regions."""
    if k < 2:
        raise InvalidParameterError(f"k must be >= 2, got {k}")
    lower = [normal_quantile(i / k) for i in range(1, k // 2 + 1)]
    out = lower[: (k - 1) // 2]
    if k % 2 == 0:
        out.append(0.0)
    out.extend(-b for b in reversed(lower[: (k - 1) // 2]))
    return out


def _region(values: np.ndarray, cuts: Sequence[float]) -> list[int]:
    # half-open regions [cut_{j-1}, cut_j): a value equal to a cut goes up
    return [bisect_right(cuts, float(v)) for v in values]


def sax_discretize(series: Sequence[float], cfg: SaxConfig) -> SymbolSequence:
    means = paa(znormalize(series), cfg.segment_size)
    return SymbolSequence(Alphabet.letters(cfg.k), tuple(_region(means, sax_breakpoints(cfg.k))))


def cutpoint_discretize(series: Sequence[float], cfg: CutPointConfig) -> SymbolSequence:
    values = np.asarray(series, dtype=float)
    return SymbolSequence(Alphabet.letters(cfg.k), tuple(_region(values, cfg.cutpoints)))


def read_series_csv(path: str | Path) -> np.ndarray:
    """Read one value per line, or ``timestamp,value`` rows (timestamp ignored).

    Lines starting with ``#`` and a non-numeric header row are skipped.
    """
    values = []
    with open(path, newline="") as fh:
        for lineno, row in enumerate(csv.reader(fh), 1):
            row = [c.strip() for c in row if c.strip()]
            if not row or row[0].startswith("#"):
                continue
            try:
                values.append(float(row[-1]))
            except ValueError:
                if values:
                    raise InvalidInputError(f"{path}:{lineno}: not a number: {row[-1]!r}") from None
    return np.asarray(values, dtype=float)
