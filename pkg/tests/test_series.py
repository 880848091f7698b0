"""Core series type, differencing round-trips, and summary statistics."""

from __future__ import annotations

import datetime as dt

import numpy as np
import pytest

import ratecast as rc
from ratecast.series import format_timestamp, next_timestamps, parse_timestamp

TOL = 1e-12


def test_difference_hand_cases():
    assert rc.difference(rc.TimeSeries.from_values([1.0, 2.0, 3.0, 4.0]), 1).values.tolist() == [1.0, 1.0, 1.0]
    assert rc.difference(rc.TimeSeries.from_values([5.0, 5.0, 5.0]), 1).values.tolist() == [0.0, 0.0]
    # second difference of [1,2,4,8]: first pass [1,2,4], second pass [1,2]
    diff2 = rc.difference(rc.TimeSeries.from_values([1.0, 2.0, 4.0, 8.0]), 2)
    assert diff2.values.tolist() == [1.0, 2.0]
    assert diff2.heads == (1.0, 1.0)


def test_difference_d0_is_identity():
    series = rc.TimeSeries.from_values([3.5, -1.25, 18.0])
    diff = rc.difference(series, 0)
    assert diff.values.tolist() == [3.5, -1.25, 18.0]
    assert diff.heads == ()
    assert diff.d == 0


def test_difference_lengths_and_errors():
    series = rc.TimeSeries.from_values([1.0, 2.0, 3.0, 4.0, 5.0])
    for d in (0, 1, 2):
        assert len(rc.difference(series, d).values) == len(series) - d
    with pytest.raises(rc.DataError):
        rc.difference(rc.TimeSeries.from_values([1.0]), 1)
    with pytest.raises(rc.DataError):
        rc.difference(series, 3)
    with pytest.raises(rc.DataError):
        rc.difference(series, -1)


def test_undifference_hand_cases():
    flat = rc.DifferencedSeries(values=np.zeros(4), d=1, heads=(5.0,))
    assert rc.undifference(flat).tolist() == [5.0, 5.0, 5.0, 5.0, 5.0]
    diff2 = rc.difference(rc.TimeSeries.from_values([1.0, 2.0, 4.0, 8.0]), 2)
    assert rc.undifference(diff2).tolist() == [1.0, 2.0, 4.0, 8.0]


def test_undifference_round_trip_exact_on_integers():
    rng = np.random.default_rng(7)
    for d in (0, 1, 2):
        values = rng.integers(-50, 50, size=12).astype(float)
        series = rc.TimeSeries.from_values(values)
        assert rc.undifference(rc.difference(series, d)).tolist() == values.tolist()


def test_undifference_round_trip_random_floats():
    rng = np.random.default_rng(11)
    for seed in range(50):
        values = rng.normal(scale=10.0, size=rng.integers(3, 40))
        series = rc.TimeSeries.from_values(values)
        for d in (0, 1, 2):
            back = rc.undifference(rc.difference(series, d))
            assert np.allclose(back, values, rtol=TOL, atol=TOL), f"seed {seed} d={d}"


def test_differenced_series_validates_heads():
    with pytest.raises(rc.DataError):
        rc.DifferencedSeries(values=np.zeros(3), d=1, heads=())


def test_summary_hand_cases():
    s = rc.summary([1.0, 2.0, 3.0])
    assert s.n == 3
    assert s.mean == 2.0
    assert abs(s.variance - 2.0 / 3.0) < TOL
    single = rc.summary([7.0])
    assert (single.n, single.mean, single.variance) == (1, 7.0, 0.0)


def test_summary_matches_two_pass_oracle():
    rng = np.random.default_rng(3)
    values = rng.uniform(-5.0, 5.0, size=100)
    mean = sum(values) / len(values)
    variance = sum((v - mean) ** 2 for v in values) / len(values)
    s = rc.summary(values)
    assert abs(s.mean - mean) < TOL
    assert abs(s.variance - variance) < TOL


def test_summary_empty_rejected():
    with pytest.raises(rc.DataError):
        rc.summary([])


def test_summary_constant_variance_zero():
    assert rc.summary([4.0] * 9).variance == 0.0


def test_time_series_validation():
    with pytest.raises(rc.DataError):
        rc.TimeSeries(timestamps=(), values=np.array([]))
    with pytest.raises(rc.DataError):
        rc.TimeSeries(timestamps=(2008, 2007), values=np.array([1.0, 2.0]))
    with pytest.raises(rc.DataError):
        rc.TimeSeries(timestamps=(2007, 2007), values=np.array([1.0, 2.0]))
    with pytest.raises(rc.DataError):
        rc.TimeSeries(timestamps=(2007, 2008), values=np.array([1.0, np.nan]))
    with pytest.raises(rc.DataError):
        rc.TimeSeries(timestamps=(2007, dt.date(2008, 1, 1)), values=np.array([1.0, 2.0]))
    single = rc.TimeSeries(timestamps=(2020,), values=np.array([1.5]))
    assert len(single) == 1


def test_time_series_values_read_only():
    series = rc.TimeSeries.from_values([1.0, 2.0, 3.0])
    with pytest.raises(ValueError):
        series.values[0] = 99.0


def test_parse_and_format_timestamps():
    assert parse_timestamp("2006") == 2006
    assert parse_timestamp("2006-03-15") == dt.date(2006, 3, 15)
    assert format_timestamp(2006) == "2006"
    assert format_timestamp(dt.date(2006, 3, 15)) == "2006-03-15"
    for bad in ("", "20a6", "2006-13-01", "2006/03/15", "March"):
        with pytest.raises(rc.DataError):
            parse_timestamp(bad)


def test_next_timestamps_year_and_date_steps():
    assert next_timestamps((2012, 2013, 2014), 3) == (2015, 2016, 2017)
    assert next_timestamps((2010, 2012), 2) == (2014, 2016)
    days = (dt.date(2020, 1, 1), dt.date(2020, 1, 8))
    assert next_timestamps(days, 2) == (dt.date(2020, 1, 15), dt.date(2020, 1, 22))
    assert next_timestamps((2005,), 1) == (2006,)


def test_integrate_forward_single_level():
    out = rc.integrate_forward([5.0], [1.0, 1.0, 2.0])
    assert out.tolist() == [6.0, 7.0, 9.0]


def test_integrate_forward_matches_difference_inverse():
    # extending [1,2,4,8] with second differences [2,2] must reproduce the
    # series whose d=2 difference is [1,2,2,2]
    tails = [8.0, 4.0]  # last original value, last first-difference
    out = rc.integrate_forward(tails, [2.0, 2.0])
    extended = rc.TimeSeries.from_values([1.0, 2.0, 4.0, 8.0] + out.tolist())
    assert rc.difference(extended, 2).values.tolist() == [1.0, 2.0, 2.0, 2.0]


def test_integrate_forward_empty_tails_identity():
    out = rc.integrate_forward([], [3.0, -1.0])
    assert out.tolist() == [3.0, -1.0]
