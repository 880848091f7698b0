"""ACF/PACF estimators, differencing-order choice, and pattern suggestion."""

from __future__ import annotations

import numpy as np
import pytest

import ratecast as rc
from ratecast.identify import CorrelogramPoint, PatternKind

from .oracles import pacf_solve, sample_autocorrelations

PACF_TOL = 1e-8


def _white_noise(seed: int, n: int) -> np.ndarray:
    return np.random.default_rng(seed).standard_normal(n)


def test_acf_lag_zero_is_one_exactly():
    for seed in range(5):
        points = rc.acf(_white_noise(seed, 60), 5)
        assert points[0].lag == 0
        assert points[0].value == 1.0


def test_acf_alternating_hand_case():
    # +-1 alternating: mean 0, denominator 8, lag-1 numerator -7
    series = [1.0, -1.0, 1.0, -1.0, 1.0, -1.0, 1.0, -1.0]
    points = rc.acf(series, 1)
    assert points[1].value == -0.875
    oracle = sample_autocorrelations(series, 1)
    assert abs(points[1].value - oracle[1]) < 1e-14


def test_acf_matches_direct_oracle_on_random_series():
    rng = np.random.default_rng(21)
    for _ in range(20):
        series = rng.normal(size=rng.integers(20, 80))
        points = rc.acf(series, 10)
        oracle = sample_autocorrelations(series, 10)
        for k in range(11):
            assert abs(points[k].value - oracle[k]) < 1e-12


def test_acf_iid_mostly_within_band():
    hits = 0
    for seed in range(100):
        points = rc.acf(_white_noise(seed, 1000), 1)
        if abs(points[1].value) < 1.96 / np.sqrt(1000):
            hits += 1
    assert hits >= 90, f"only {hits}/100 lag-1 values inside the band"


def test_acf_band_value():
    points = rc.acf(_white_noise(0, 400), 3)
    assert abs(points[1].band - 1.96 / 20.0) < 1e-15


def test_acf_errors():
    with pytest.raises(rc.DataError):
        rc.acf([1.0] * 30, 5)  # zero variance
    with pytest.raises(rc.DataError):
        rc.acf([1.0, 2.0, 3.0], 3)  # max_lag >= n
    with pytest.raises(rc.DataError):
        rc.acf([1.0, 2.0, 3.0], 0)


def test_acf_scale_and_shift_invariant():
    series = _white_noise(5, 120)
    base = [p.value for p in rc.acf(series, 8)]
    moved = [p.value for p in rc.acf(-2.5 * series + 40.0, 8)]
    assert np.allclose(base, moved, atol=1e-10)


def test_pacf_lag_one_equals_acf_lag_one():
    series = _white_noise(9, 90)
    assert rc.pacf(series, 6)[0].value == rc.acf(series, 6)[1].value


def test_pacf_matches_solve_oracle():
    rng = np.random.default_rng(33)
    for i in range(20):
        series = rng.normal(size=rng.integers(50, 150))
        mine = [p.value for p in rc.pacf(series, 5)]
        oracle = pacf_solve(series, 5)
        assert np.allclose(mine, oracle, atol=PACF_TOL), f"case {i}"


def test_pacf_ar1_higher_lags_inside_band():
    inside = 0
    total = 0
    params = rc.ArimaParams(mu=0.0, beta=(0.8,), alpha=(), sigma2=1.0)
    for seed in range(20):
        sim = rc.simulate(params, rc.ArimaOrder(1, 0, 0), 2000, seed)
        for point in rc.pacf(sim.values, 10)[1:]:
            total += 1
            if abs(point.value) < point.band:
                inside += 1
    assert inside / total > 0.85, f"{inside}/{total} inside the band"


def test_pacf_errors_match_acf():
    with pytest.raises(rc.DataError):
        rc.pacf([2.0] * 30, 5)


def test_select_d_white_noise_zero():
    for seed in range(10):
        series = rc.TimeSeries.from_values(_white_noise(seed, 100))
        assert rc.select_d(series) == 0


def test_select_d_linear_and_quadratic_trends():
    t = np.arange(1.0, 21.0)
    assert rc.select_d(rc.TimeSeries.from_values(t)) == 1
    assert rc.select_d(rc.TimeSeries.from_values(t**2)) == 2


def test_select_d_shift_invariant():
    rng = np.random.default_rng(17)
    walk = np.cumsum(rng.standard_normal(80))
    assert rc.select_d(rc.TimeSeries.from_values(walk)) == rc.select_d(
        rc.TimeSeries.from_values(walk + 1000.0)
    )


def test_select_d_too_short():
    with pytest.raises(rc.DataError):
        rc.select_d(rc.TimeSeries.from_values([1.0, 2.0, 3.0, 4.0]))


def _points(values, band):
    return [CorrelogramPoint(lag=i + 1, value=v, band=band) for i, v in enumerate(values)]


def test_classify_nothing_significant_is_none():
    flat = _points([0.05, -0.02, 0.01, 0.04], band=0.2)
    suggestion = rc.classify(flat, flat, 100)
    assert suggestion.kind is PatternKind.NONE
    assert (suggestion.suggested_p, suggestion.suggested_q) == (0, 0)


def test_classify_cutoff_against_tails():
    tails = _points([0.9, 0.7, 0.55, 0.4, 0.3], band=0.2)
    cut1 = _points([0.8, 0.1, 0.05, 0.02, 0.01], band=0.2)
    ar = rc.classify(tails, cut1, 100)
    assert ar.kind is PatternKind.AR and ar.suggested_p == 1
    ma = rc.classify(cut1, tails, 100)
    assert ma.kind is PatternKind.MA and ma.suggested_q == 1


def test_classify_both_tail_off_is_arma():
    tails = _points([0.9, 0.7, 0.55, 0.4, 0.3], band=0.2)
    suggestion = rc.classify(tails, tails, 100)
    assert suggestion.kind is PatternKind.ARMA
    assert (suggestion.suggested_p, suggestion.suggested_q) == (1, 1)


def test_classify_both_cutoff_prefers_smaller_order():
    cut1 = _points([0.8, 0.1, 0.05, 0.02, 0.01], band=0.2)
    cut2 = _points([0.8, 0.5, 0.05, 0.02, 0.01], band=0.2)
    ar = rc.classify(cut2, cut1, 100)  # PACF cuts at 1, ACF at 2
    assert ar.kind is PatternKind.AR and ar.suggested_p == 1
    ma = rc.classify(cut1, cut2, 100)  # ACF cuts at 1, PACF at 2
    assert ma.kind is PatternKind.MA and ma.suggested_q == 1
    tie = rc.classify(cut1, cut1, 100)  # equal cutoffs: AR wins the tie
    assert tie.kind is PatternKind.AR and tie.suggested_p == 1


def test_classify_simulated_ar1_majority():
    hits = 0
    params = rc.ArimaParams(mu=0.0, beta=(0.8,), alpha=(), sigma2=1.0)
    for seed in range(20):
        sim = rc.simulate(params, rc.ArimaOrder(1, 0, 0), 2000, seed)
        acf_pts = rc.acf(sim.values, 10)
        pacf_pts = rc.pacf(sim.values, 10)
        suggestion = rc.classify(acf_pts, pacf_pts, 2000)
        if suggestion.kind is PatternKind.AR and suggestion.suggested_p == 1:
            hits += 1
    assert hits > 10, f"AR(1) recognized in only {hits}/20 seeds"


def test_classify_simulated_ma1_majority():
    hits = 0
    # conventional MA coefficient +0.8 is alpha = -0.8 in the subtracted form
    params = rc.ArimaParams(mu=0.0, beta=(), alpha=(-0.8,), sigma2=1.0)
    for seed in range(20):
        sim = rc.simulate(params, rc.ArimaOrder(0, 0, 1), 2000, seed)
        acf_pts = rc.acf(sim.values, 10)
        pacf_pts = rc.pacf(sim.values, 10)
        suggestion = rc.classify(acf_pts, pacf_pts, 2000)
        if suggestion.kind is PatternKind.MA and suggestion.suggested_q == 1:
            hits += 1
    assert hits > 10, f"MA(1) recognized in only {hits}/20 seeds"
