import math

import numpy as np
import pytest

import mpseg


def test_rolling_stats_and_windows():
    windows = mpseg.sliding_window([1.0, 2.0, 3.0, 4.0], 2)
    assert windows.shape == (3, 2)
    means, stds = mpseg.rolling_mean_std([1.0, 2.0, 3.0], 3)
    assert means[0] == pytest.approx(2.0)
    assert stds[0] == pytest.approx(math.sqrt(2.0 / 3.0))


def test_znorm_distance():
    assert mpseg.znorm_distance([1, 2, 3], [10, 20, 30]) == pytest.approx(0.0, abs=1e-12)
    assert mpseg.znorm_distance([1, 2, 3], [3, 2, 1]) == pytest.approx(2 * math.sqrt(3))


def test_engines_agree():
    rng = np.random.default_rng(0)
    values = rng.standard_normal(300).cumsum()
    p_brute, i_brute = mpseg.brute_force_profile(values, 16)
    p_stomp, _ = mpseg.stomp_profile(values, 16)
    p_conv, i_conv = mpseg.conv_profile(values, 16, batch_rows=7, workers=2)
    assert np.max(np.abs(p_brute - p_stomp)) < 1e-5
    assert np.max(np.abs(p_brute - p_conv)) < 1e-5
    assert np.all(np.abs(i_conv - np.arange(len(i_conv))) > 4)


def test_segmentation_and_detection():
    assert list(mpseg.arc_counts(np.array([1, 0, 3, 2]))) == [2, 0, 2, 0]
    iac = mpseg.idealized_arc_count(100)
    assert iac[0] == 0.0 and iac[50] == 50.0
    report = mpseg.detect([1.0, 0.34, 1.0], 0.35)
    assert report.anomaly_detected and report.onset_index == 1
    assert list(report.labels) == [0, 0, 1]
    card = mpseg.score(np.array([0, 0, 1, 1]), 1)
    assert (card.tp, card.fp, card.tn, card.fn) == (2, 0, 2, 0)
    assert mpseg.recommend_epsilon([[1.0, 0.62], [0.55], [0.71]]) == pytest.approx(0.55)


def test_pipeline_on_synthetic():
    values, start = mpseg.generate_synthetic(seed=3)
    assert start == 1080
    result = mpseg.run_pipeline(values)
    assert result["report"].anomaly_detected
    assert abs(result["onset_index_raw"] - start) <= 100
    assert np.all((result["cad"] >= 0) & (result["cad"] <= 1))


def test_errors_map_to_python():
    with pytest.raises(mpseg.MpsegError, match="no candidate outside exclusion zone"):
        mpseg.conv_profile([1.0, 2.0, 3.0, 4.0], 4)
    with pytest.raises(ValueError):
        mpseg.detect([], 0.3)
