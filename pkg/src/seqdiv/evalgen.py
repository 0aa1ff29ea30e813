"""Synthetic benchmark series and ROC/AUC evaluation of monitor scores.

Both generators draw from numpy's PCG64 bit generator. Normal variates are
produced by the inverse-CDF transform of open-interval uniforms so the
output depends only on the seed and this module.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from seqdiv.discretize import SaxConfig, normal_quantile, sax_discretize
from seqdiv.errors import InvalidInputError, InvalidParameterError
from seqdiv.monitor import DeltaWindow, MonitorConfig, label_distances, run_monitor
from seqdiv.symbolic import map_point_to_symbol_index

RNG_ALGORITHM = "numpy-PCG64/inverse-cdf-normal"

_normal_quantile = np.frompyfunc(normal_quantile, 1, 1)


def _uniforms(rng: np.random.Generator, size: int) -> np.ndarray:
    # k / 2**53 shifted by half a step: strictly inside (0, 1)
    return rng.random(size) + 2.0**-54


def _normals(rng: np.random.Generator, size: int) -> np.ndarray:
    return _normal_quantile(_uniforms(rng, size)).astype(float)


@dataclass(frozen=True, eq=False)
class GeneratedDataset:
    values: np.ndarray
    change_points: tuple[int, ...]  # 1-based data indices where a new regime starts
    name: str = ""
    seed: int | None = None
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        cps = tuple(int(c) for c in self.change_points)
        if any(b <= a for a, b in zip(cps, cps[1:])):
            raise InvalidInputError("change points must be strictly ascending")
        if cps and not (1 <= cps[0] and cps[-1] <= len(self.values)):
            raise InvalidInputError("change points must lie within [1, len(values)]")
        object.__setattr__(self, "change_points", cps)

    def sidecar(self) -> dict:
        return {
            "generator": self.name,
            "seed": self.seed,
            "rng": RNG_ALGORITHM,
            "length": int(len(self.values)),
            "change_points": list(self.change_points),
            **self.metadata,
        }

    def write(self, path: str | Path) -> Path:
        """Write values one per line and a ``.json`` sidecar; returns the sidecar path."""
        path = Path(path)
        path.write_text("".join(f"{v!r}\n" for v in map(float, self.values)))
        side = path.with_suffix(".json")
        side.write_text(json.dumps(self.sidecar(), indent=2) + "\n")
        return side

    @classmethod
    def read(cls, path: str | Path, sidecar: str | Path | None = None) -> "GeneratedDataset":
        from seqdiv.discretize import read_series_csv

        path = Path(path)
        side = Path(sidecar) if sidecar else path.with_suffix(".json")
        meta = json.loads(side.read_text()) if side.exists() else {}
        return cls(
            read_series_csv(path),
            tuple(meta.get("change_points", ())),
            name=meta.get("generator", ""),
            seed=meta.get("seed"),
        )


def gen_dc(seed: int) -> GeneratedDataset:
    """Distribution-change series: 25 blocks of 900 U(-3, 3) points then 300 N(0, 1) points."""
    rng = np.random.Generator(np.random.PCG64(seed))
    parts = []
    for _ in range(25):
        parts.append(-3.0 + 6.0 * _uniforms(rng, 900))
        parts.append(_normals(rng, 300))
    cps = sorted({1200 * j + 901 for j in range(25)} | {1200 * j + 1 for j in range(1, 25)})
    return GeneratedDataset(np.concatenate(parts), tuple(cps), "dc", seed)


def gen_jm(seed: int) -> GeneratedDataset:
    """Jumping-mean AR(2) series ``X_t = 0.6 X_{t-1} - 0.5 X_{t-2} + e_t``.

    ``e_t ~ N(3 * floor(t / 1000), 1)`` with ``t`` the 1-based index and
    ``X_0 = X_{-1} = 0``.
    """
    rng = np.random.Generator(np.random.PCG64(seed))
    length = 30_000
    t = np.arange(1, length + 1)
    eps = 3.0 * (t // 1000) + _normals(rng, length)
    x = np.empty(length)
    x1 = x2 = 0.0
    for i in range(length):
        x[i] = 0.6 * x1 - 0.5 * x2 + eps[i]
        x1, x2 = x[i], x1
    return GeneratedDataset(x, tuple(1000 * i for i in range(1, 30)), "jm", seed)


@dataclass(frozen=True, eq=False)
class LabeledScoreSeries:
    scores: tuple[float, ...]
    labels: tuple[bool, ...]

    def __post_init__(self):
        if len(self.scores) != len(self.labels):
            raise InvalidInputError(f"{len(self.scores)} scores but {len(self.labels)} labels")
        object.__setattr__(self, "scores", tuple(float(s) for s in self.scores))
        object.__setattr__(self, "labels", tuple(bool(x) for x in self.labels))


@dataclass(frozen=True, eq=False)
class RocResult:
    thresholds: np.ndarray  # first entry is nan: the all-negative operating point
    fpr: np.ndarray
    tpr: np.ndarray
    auc: float

    def to_csv(self) -> str:
        rows = ["threshold,fpr,tpr"]
        for t, f, p in zip(self.thresholds, self.fpr, self.tpr):
            ts = "" if math.isnan(t) else ("inf" if math.isinf(t) else repr(float(t)))
            rows.append(f"{ts},{float(f)!r},{float(p)!r}")
        return "\n".join(rows) + "\n"


def roc_auc(series: LabeledScoreSeries) -> RocResult:
    """ROC curve and AUC.

    AUC is the Mann-Whitney probability that a random positive outscores a
    random negative, ties counting one half; ``inf`` ranks above every finite
    score. ROC points are taken at each distinct score, predicting positive
    for ``score >= threshold``.
    """
    s = np.asarray(series.scores, dtype=float)
    y = np.asarray(series.labels, dtype=bool)
    if np.isnan(s).any():
        raise InvalidInputError("scores contain NaN")
    n_pos = int(y.sum())
    n_neg = y.size - n_pos
    if n_pos == 0 or n_neg == 0:
        raise InvalidInputError("AUC needs at least one positive and one negative label")

    uniq, inverse, counts = np.unique(s, return_inverse=True, return_counts=True)
    # average 1-based rank of each tie group
    upper = np.cumsum(counts)
    avg_rank = upper - (counts - 1) / 2.0
    rank_sum = avg_rank[inverse][y].sum()
    auc = (rank_sum - n_pos * (n_pos + 1) / 2.0) / (n_pos * n_neg)

    pos_at = np.bincount(inverse, weights=y.astype(float), minlength=uniq.size)[::-1]
    neg_at = counts[::-1] - pos_at
    tpr = np.concatenate([[0.0], np.cumsum(pos_at) / n_pos])
    fpr = np.concatenate([[0.0], np.cumsum(neg_at) / n_neg])
    thresholds = np.concatenate([[np.nan], uniq[::-1]])
    return RocResult(thresholds, fpr, tpr, float(auc))


def score_dataset(
    ds: GeneratedDataset,
    sax: SaxConfig,
    n: int,
    measures: Iterable[str],
    delta: DeltaWindow,
    mode: str = "sliding",
    m: int = 2,
    d: float = 0.99,
    alpha: float = 0.05,
    delta_anchor: str = "end",
) -> dict[str, tuple[list, LabeledScoreSeries]]:
    """Discretize, monitor with each measure, and label the reports against the true change points.

    ``delta_anchor="end"`` places the labeling window around the last symbol
    consumed by each report; ``"junction"`` places it ``n`` symbols earlier,
    at the seam where the newest sequence begins.

    Returns ``measure -> (reports, labeled scores)``.
    """
    if delta_anchor not in ("end", "junction"):
        raise InvalidParameterError(f"delta_anchor must be 'end' or 'junction', got {delta_anchor!r}")
    shift = n if delta_anchor == "junction" else 0
    symbols = sax_discretize(ds.values, sax)
    anomalies = [map_point_to_symbol_index(c, sax.segment_size) for c in ds.change_points]
    out = {}
    for measure in measures:
        cfg = MonitorConfig(n=n, mode=mode, m=m, measure=measure, d=d, alpha=alpha)
        reports = run_monitor(cfg, symbols)
        labels = label_distances([r.boundary - shift for r in reports], anomalies, delta)
        out[measure] = (reports, LabeledScoreSeries(tuple(r.value for r in reports), tuple(labels)))
    return out


def auc_table(results: dict[str, tuple[list, LabeledScoreSeries]]) -> dict[str, float]:
    return {measure: roc_auc(series).auc for measure, (_, series) in results.items()}
