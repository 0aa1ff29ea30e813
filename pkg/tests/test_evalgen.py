import json
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy import stats

from seqdiv import (
    DeltaWindow,
    GeneratedDataset,
    InvalidInputError,
    InvalidParameterError,
    LabeledScoreSeries,
    SaxConfig,
    auc_table,
    gen_dc,
    gen_jm,
    roc_auc,
    score_dataset,
)
from seqdiv.evalgen import RNG_ALGORITHM


@pytest.fixture(scope="module")
def dc():
    return gen_dc(0)


@pytest.fixture(scope="module")
def jm():
    return gen_jm(0)


def test_dc_layout(dc):
    assert len(dc.values) == 30_000
    assert dc.change_points[:5] == (901, 1201, 2101, 2401, 3301)
    assert len(dc.change_points) == 49
    assert dc.sidecar()["rng"] == RNG_ALGORITHM


def test_dc_deterministic(dc):
    np.testing.assert_array_equal(gen_dc(0).values, dc.values)
    assert not np.array_equal(gen_dc(1).values, dc.values)


def test_dc_segment_distributions(dc):
    uni = np.concatenate([dc.values[1200 * j : 1200 * j + 900] for j in range(25)])
    nor = np.concatenate([dc.values[1200 * j + 900 : 1200 * (j + 1)] for j in range(25)])
    assert uni.min() > -3 and uni.max() < 3
    assert uni.var() == pytest.approx(3.0, abs=0.3)
    assert stats.kstest(uni, stats.uniform(-3, 6).cdf).pvalue > 1e-3
    assert stats.kstest(nor, stats.norm.cdf).pvalue > 1e-3


def test_jm_layout(jm):
    assert len(jm.values) == 30_000
    assert jm.change_points == tuple(range(1000, 30_000, 1000))


def test_jm_matches_ar2_moments(jm):
    # stationary AR(2) with phi = (0.6, -0.5): mean mu / 0.9,
    # variance (1 - phi2) / ((1 + phi2) ((1 - phi2)^2 - phi1^2))
    phi1, phi2 = 0.6, -0.5
    var = (1 - phi2) / ((1 + phi2) * ((1 - phi2) ** 2 - phi1**2))
    resid = []
    for j in range(1, 30):
        block = jm.values[1000 * j + 49 : 1000 * (j + 1) - 1]  # skip transients after each jump
        resid.append(block - 3 * j / (1 - phi1 - phi2))
    resid = np.concatenate(resid)
    # block means: std error is small, 0.1 is ~10 sigma
    assert abs(resid.mean()) < 0.1
    assert resid.var() == pytest.approx(var, rel=0.05)


def test_jm_recurrence(jm):
    x = jm.values
    t = np.arange(3, 30_001)
    eps = x[2:] - 0.6 * x[1:-1] + 0.5 * x[:-2]
    noise = eps - 3 * (t // 1000)
    assert abs(noise.mean()) < 0.05
    assert noise.std() == pytest.approx(1.0, abs=0.03)


def test_dataset_round_trip(tmp_path, dc):
    path = tmp_path / "dc.csv"
    side = dc.write(path)
    assert json.loads(side.read_text())["seed"] == 0
    back = GeneratedDataset.read(path)
    np.testing.assert_array_equal(back.values, dc.values)
    assert back.change_points == dc.change_points


def test_dataset_validates_change_points():
    with pytest.raises(InvalidInputError):
        GeneratedDataset(np.zeros(10), (5, 3))
    with pytest.raises(InvalidInputError):
        GeneratedDataset(np.zeros(10), (11,))


def test_auc_example():
    roc = roc_auc(LabeledScoreSeries((0.1, 0.4, 0.35, 0.8), (False, False, True, True)))
    assert roc.auc == pytest.approx(0.75)
    assert roc.fpr[0] == roc.tpr[0] == 0 and roc.fpr[-1] == roc.tpr[-1] == 1
    # trapezoid area of the curve agrees with the rank statistic
    assert float(np.sum(np.diff(roc.fpr) * (roc.tpr[1:] + roc.tpr[:-1]) / 2)) == pytest.approx(0.75)


def test_auc_ties_and_infinity():
    assert roc_auc(LabeledScoreSeries((1, 1, 1, 1), (True, False, True, False))).auc == 0.5
    assert roc_auc(LabeledScoreSeries((math.inf, math.inf, 3.0, 2.0), (True, True, False, False))).auc == 1.0


def test_auc_single_class():
    with pytest.raises(InvalidInputError):
        roc_auc(LabeledScoreSeries((0.1, 0.2), (True, True)))
    with pytest.raises(InvalidInputError):
        LabeledScoreSeries((0.1,), (True, False))


scored = st.lists(st.tuples(st.floats(-100, 100), st.booleans()), min_size=2, max_size=60).filter(
    lambda xs: 0 < sum(b for _, b in xs) < len(xs)
)


@given(scored)
def test_auc_matches_pairwise_count(data):
    s, y = zip(*data)
    pos = [a for a, b in data if b]
    neg = [a for a, b in data if not b]
    direct = sum((p > q) + 0.5 * (p == q) for p in pos for q in neg) / (len(pos) * len(neg))
    assert roc_auc(LabeledScoreSeries(s, y)).auc == pytest.approx(direct, abs=1e-12)


@given(scored)
def test_auc_complement_and_monotone_invariance(data):
    s, y = zip(*data)
    base = roc_auc(LabeledScoreSeries(s, y)).auc
    flipped = roc_auc(LabeledScoreSeries(s, [not b for b in y])).auc
    assert base + flipped == pytest.approx(1.0, abs=1e-12)
    assert roc_auc(LabeledScoreSeries(stats.rankdata(s, method="dense") ** 2, y)).auc == pytest.approx(base, abs=1e-12)


def test_roc_csv():
    text = roc_auc(LabeledScoreSeries((0.1, 0.9), (False, True))).to_csv().splitlines()
    assert text[0] == "threshold,fpr,tpr"
    assert text[1] == ",0.0,0.0"
    assert len(text) == 4


def test_score_dataset_labels(dc):
    res = score_dataset(dc, SaxConfig(3, 3), 100, ["gjs-sv", "nlevd"], DeltaWindow(-5, 5))
    reps, series = res["gjs-sv"]
    assert len(reps) == 99
    # change points map to symbols 301, 401, 701, 801, ...
    assert [r.boundary for r, lab in zip(reps, series.labels) if lab][:4] == [300, 400, 700, 800]
    table = auc_table(res)
    assert set(table) == {"gjs-sv", "nlevd"}
    assert all(0 <= v <= 1 for v in table.values())


def test_score_dataset_junction_anchor(dc):
    res = score_dataset(dc, SaxConfig(3, 3), 100, ["gjs-sv"], DeltaWindow(-5, 5), delta_anchor="junction")
    reps, series = res["gjs-sv"]
    assert [r.boundary for r, lab in zip(reps, series.labels) if lab][:4] == [400, 500, 800, 900]
    with pytest.raises(InvalidParameterError):
        score_dataset(dc, SaxConfig(3, 3), 100, ["gjs-sv"], DeltaWindow(-5, 5), delta_anchor="middle")
