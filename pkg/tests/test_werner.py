import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from grothendieck.werner import (REGIME_LABELS, WernerThresholds, bell_mean_value, classify,
                                 regimes, thresholds)

k3 = st.floats(math.sqrt(2), 1.5163)


@pytest.mark.parametrize("k, onset", [(1.41758, 0.705428), (1.417241, 0.705596),
                                      (math.sqrt(2), 1 / math.sqrt(2))])
def test_nonlocal_onset(k, onset):
    assert thresholds(k).nonlocal_onset == pytest.approx(onset, abs=1e-6)


def test_fixed_constants():
    t = thresholds(1.41758)
    assert (t.separable_max, t.lhv_all_max, t.lhv_projective_max) == (1 / 3, 5 / 12, 0.6595)


@pytest.mark.parametrize("k", [1.4, 1.52, math.nan])
def test_rejects_out_of_bracket(k):
    with pytest.raises(ValueError):
        thresholds(k)


def test_thresholds_must_increase():
    with pytest.raises(ValueError):
        WernerThresholds(0.5, 0.4, 0.6, 0.7)


@given(k3, k3)
def test_onset_decreasing(k1, k2):
    if k1 < k2:
        assert thresholds(k1).nonlocal_onset > thresholds(k2).nonlocal_onset


@pytest.mark.parametrize("p, label", [(0.0, "separable"), (0.2, "separable"),
                                      (0.4, "entangled-local-all"), (0.6, "local-projective"),
                                      (0.70, "unknown-window"), (0.71, "nonlocal"),
                                      (1.0, "nonlocal")])
def test_classify_examples(p, label):
    assert classify(p, thresholds(1.41758)).label == label


def test_boundaries_belong_to_the_local_side():
    t = thresholds(1.41758)
    assert classify(t.separable_max, t).label == "separable"
    assert classify(t.lhv_all_max, t).label == "entangled-local-all"
    assert classify(t.lhv_projective_max, t).label == "local-projective"
    assert classify(t.nonlocal_onset, t).label == "unknown-window"
    assert classify(t.nonlocal_onset + 1e-12, t).label == "nonlocal"


@pytest.mark.parametrize("p", [-0.01, 1.01])
def test_classify_rejects(p):
    with pytest.raises(ValueError):
        classify(p, thresholds(1.41758))


@given(k3, st.floats(0.0, 1.0))
def test_regimes_partition(k, p):
    rs = regimes(thresholds(k))
    assert tuple(r.label for r in rs) == REGIME_LABELS
    assert rs[0].p_lo == 0.0 and rs[-1].p_hi == 1.0
    assert all(x.p_hi == y.p_lo for x, y in zip(rs, rs[1:]))
    assert sum(p in r for r in rs) == 1


def test_bell_mean_value_examples():
    rng = np.random.default_rng(0)
    a = rng.standard_normal((2, 3))
    a /= np.linalg.norm(a, axis=1, keepdims=True)
    assert bell_mean_value(np.ones((2, 2)), a, a, 0.0) == 0.0
    e = [[0.0, 0.0, 1.0]]
    assert bell_mean_value([[1.0]], e, e, 0.37) == pytest.approx(0.37, abs=1e-15)


def test_chsh_tsirelson():
    M = [[1.0, 1.0], [1.0, -1.0]]
    s = 1 / math.sqrt(2)
    A = [[1.0, 0.0, 0.0], [0.0, 0.0, 1.0]]
    B = [[s, 0.0, s], [s, 0.0, -s]]
    for p in (1.0, 0.705428, 0.3):
        assert bell_mean_value(M, A, B, p) == pytest.approx(2 * math.sqrt(2) * p, abs=1e-12)


@given(st.floats(0.0, 1.0), st.floats(-3.0, 3.0))
def test_bell_mean_value_linear(p, alpha):
    rng = np.random.default_rng(5)
    M = rng.standard_normal((3, 4))
    A = rng.standard_normal((3, 3))
    B = rng.standard_normal((4, 3))
    A /= np.linalg.norm(A, axis=1, keepdims=True)
    B /= np.linalg.norm(B, axis=1, keepdims=True)
    base = bell_mean_value(M, A, B, 1.0)
    assert bell_mean_value(M, A, B, p) == pytest.approx(p * base, abs=1e-12)
    assert bell_mean_value(alpha * M, A, B, p) == pytest.approx(alpha * p * base, abs=1e-12)


def test_bell_mean_value_rejects():
    e = [[0.0, 0.0, 1.0]]
    with pytest.raises(ValueError):
        bell_mean_value(np.ones((2, 2)), e, e, 1.0)
    with pytest.raises(ValueError):
        bell_mean_value([[1.0]], [[0.0, 0.0, 2.0]], e, 1.0)
