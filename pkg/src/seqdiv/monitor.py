"""Streaming deviation monitor.

The stream is cut into sequences of ``n`` symbols. After each completed
sequence the configured measure is evaluated over the current window of
sequences: the latest ``m`` in sliding mode (change-point detection), or
every sequence seen so far in growing mode (long-term deviation). GJS
measures are compared against their chi-square threshold and raise an
alert when they exceed it.
"""

from __future__ import annotations

import json
import math
from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from seqdiv import divergence, seqdist
from seqdiv.divergence import ThresholdParams, WeightVector
from seqdiv.errors import InvalidParameterError
from seqdiv.markov import DEFAULT_DAMPING, frequency_vector, steady_state_vector
from seqdiv.symbolic import Alphabet, Segmenter, SymbolSequence

GROWING = "growing"
SLIDING = "sliding"

GJS_MEASURES = ("gjs-sv", "gjs-fv")
DIST_MEASURES = GJS_MEASURES + ("kl-sv", "kl-fv", "cos-sv", "cos-fv")
SEQ_MEASURES = ("nlevd", "nlcs", "pdist", "jc")
MEASURES = DIST_MEASURES + SEQ_MEASURES


@dataclass(frozen=True)
class MonitorConfig:
    n: int
    mode: str = SLIDING
    m: int = 2
    measure: str = "gjs-sv"
    d: float = DEFAULT_DAMPING
    alpha: float = 0.05
    weights: WeightVector | None = None

    def __post_init__(self):
        if self.n < 2:
            raise InvalidParameterError(f"n must be >= 2, got {self.n}")
        if self.mode not in (GROWING, SLIDING):
            raise InvalidParameterError(f"mode must be 'growing' or 'sliding', got {self.mode!r}")
        if self.mode == SLIDING and self.m < 2:
            raise InvalidParameterError(f"sliding window m must be >= 2, got {self.m}")
        if self.measure not in MEASURES:
            raise InvalidParameterError(f"unknown measure {self.measure!r}; choose from {', '.join(MEASURES)}")
        if not 0.0 < self.alpha < 1.0:
            raise InvalidParameterError(f"alpha must be in (0, 1), got {self.alpha}")
        if not 0.0 < self.d < 1.0:
            raise InvalidParameterError(f"damping must be in (0, 1), got {self.d}")
        if self.weights is not None:
            if self.mode == GROWING:
                raise InvalidParameterError("explicit weights need a fixed window; use sliding mode")
            if len(self.weights) != self.m:
                raise InvalidParameterError(f"{len(self.weights)} weights for a window of m={self.m}")
            if self.measure not in GJS_MEASURES:
                raise InvalidParameterError("weights only apply to GJS measures")


@dataclass(frozen=True)
class DivergenceReport:
    step_index: int
    window_sequences: int
    total_symbols: int
    value: float
    threshold: float | None
    alert: bool
    measure: str = ""
    boundary: int = 0  # 1-based index of the last symbol consumed

    def to_json(self) -> str:
        value = "inf" if math.isinf(self.value) else self.value
        return json.dumps(
            {
                "step": self.step_index,
                "m": self.window_sequences,
                "N": self.total_symbols,
                "measure": self.measure,
                "value": value,
                "threshold": self.threshold,
                "alert": self.alert,
                "boundary": self.boundary,
            }
        )

    @classmethod
    def from_json(cls, line: str) -> "DivergenceReport":
        obj = json.loads(line)
        value = math.inf if obj["value"] == "inf" else float(obj["value"])
        return cls(
            step_index=obj["step"],
            window_sequences=obj["m"],
            total_symbols=obj["N"],
            value=value,
            threshold=obj["threshold"],
            alert=obj["alert"],
            measure=obj.get("measure", ""),
            boundary=obj.get("boundary", 0),
        )


@dataclass(frozen=True)
class DeltaWindow:
    """Inclusive symbol offsets ``[lo, hi]`` around an evaluation boundary."""

    lo: int
    hi: int

    def __post_init__(self):
        if self.lo > self.hi:
            raise InvalidParameterError(f"delta window needs lo <= hi, got [{self.lo}, {self.hi}]")


@lru_cache(maxsize=None)
def _threshold(k: int, m: int, N: int, alpha: float) -> float:
    return divergence.gjs_threshold(ThresholdParams(k, m, N, alpha))


def _pair_measure(measure: str, k: int):
    return {
        "kl-sv": divergence.kl,
        "kl-fv": divergence.kl,
        "cos-sv": divergence.cosine_distance,
        "cos-fv": divergence.cosine_distance,
        "nlevd": seqdist.nlevd,
        "nlcs": seqdist.one_minus_nlcs,
        "pdist": seqdist.p_distance,
        "jc": lambda a, b: seqdist.jukes_cantor(a, b, k),
    }[measure]


class Monitor:
    """Incremental monitor over one symbol stream.

    Feeding the stream in pieces yields the same reports as feeding it at
    once. Per-sequence distributions and adjacent-pair distances are cached
    so each step only does the work for the newest sequence.
    """

    def __init__(self, cfg: MonitorConfig, alphabet: Alphabet):
        self.cfg = cfg
        self.alphabet = alphabet
        self._segmenter = Segmenter(cfg.n, alphabet)
        self._items: list = []  # per-sequence distribution, or the sequence itself
        self._pairs: list[float] = []  # measure between sequence i and i+1
        self._pair_fn = None if cfg.measure in GJS_MEASURES else _pair_measure(cfg.measure, alphabet.k)
        self.reports: list[DivergenceReport] = []

    def _summarize(self, seq: SymbolSequence):
        measure = self.cfg.measure
        if measure.endswith("-sv"):
            return steady_state_vector(seq, self.cfg.d)
        if measure.endswith("-fv"):
            return frequency_vector(seq)
        return seq

    def _step(self, seq: SymbolSequence, boundary: int) -> DivergenceReport | None:
        cfg = self.cfg
        item = self._summarize(seq)
        if self._pair_fn is not None and self._items:
            self._pairs.append(self._pair_fn(self._items[-1], item))
        self._items.append(item)
        if cfg.mode == SLIDING and len(self._items) > cfg.m:
            del self._items[0]
            if self._pairs:
                del self._pairs[0]
        m = len(self._items)
        if m < 2 or (cfg.mode == SLIDING and m < cfg.m):
            return None

        N = m * cfg.n
        threshold = None
        if cfg.measure in GJS_MEASURES:
            value = divergence.gjs(self._items, cfg.weights)
            threshold = _threshold(self.alphabet.k, m, N, cfg.alpha)
        else:
            value = math.fsum(self._pairs)
        report = DivergenceReport(
            step_index=len(self.reports) + 1,
            window_sequences=m,
            total_symbols=N,
            value=value,
            threshold=threshold,
            alert=threshold is not None and value > threshold,
            measure=cfg.measure,
            boundary=boundary,
        )
        self.reports.append(report)
        return report

    def feed(self, symbols: Iterable[int]) -> list[DivergenceReport]:
        """Consume more symbols and return any reports they complete."""
        out = []
        before = self._segmenter.consumed
        seqs = self._segmenter.feed(symbols)
        for i, seq in enumerate(seqs, 1):
            rep = self._step(seq, before + i * self.cfg.n)
            if rep is not None:
                out.append(rep)
        return out


def run_monitor(cfg: MonitorConfig, symbols, alphabet: Alphabet | None = None) -> list[DivergenceReport]:
    """Run a fresh monitor over a whole stream.

    ``symbols`` may be a :class:`SymbolSequence` (its alphabet is used) or
    a plain list of indices together with ``alphabet``.
    """
    if isinstance(symbols, SymbolSequence):
        alphabet = alphabet or symbols.alphabet
        symbols = symbols.data
    if alphabet is None:
        raise InvalidParameterError("an alphabet is required for a raw index stream")
    mon = Monitor(cfg, alphabet)
    mon.feed(symbols)
    return mon.reports


def label_distances(
    report_boundaries: Sequence[int], anomalies: Iterable[int], delta: DeltaWindow
) -> list[bool]:
    """Label each boundary positive iff an anomaly lies in ``[b + lo, b + hi]``."""
    marks = sorted(anomalies)
    labels = []
    for b in report_boundaries:
        i = bisect_left(marks, b + delta.lo)
        labels.append(i < len(marks) and marks[i] <= b + delta.hi)
    return labels


def change_boundaries(
    report_boundaries: Sequence[int], window_sizes: Sequence[int], n: int, changes: Iterable[int]
) -> list[bool]:
    """Flag reports whose window straddles a change point.

    A window ending at boundary ``b`` with ``w`` sequences covers symbols
    ``b - w*n + 1 .. b``; it straddles change ``c`` (first symbol of the
    new regime) when ``b - w*n + 1 < c <= b``.
    """
    marks = sorted(changes)
    out = []
    for b, w in zip(report_boundaries, window_sizes):
        start = b - w * n + 1
        i = bisect_right(marks, start)
        out.append(i < len(marks) and marks[i] <= b)
    return out
