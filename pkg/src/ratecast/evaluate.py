"""Forecast-accuracy metrics: MAE, MAPE (in percent), and RMSE."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DataError


def _paired(actual, forecast) -> tuple[np.ndarray, np.ndarray]:
    a = np.asarray(actual, dtype=float)
    f = np.asarray(forecast, dtype=float)
    if a.size == 0:
        raise DataError("metrics need at least one point")
    if a.shape != f.shape:
        raise DataError(f"length mismatch: {a.size} actual vs {f.size} forecast")
    return a, f


def mae(actual, forecast) -> float:
    """Mean absolute error, (1/k) sum |forecast_t - actual_t|."""
    a, f = _paired(actual, forecast)
    return float(np.mean(np.abs(f - a)))


def mape(actual, forecast) -> float:
    """Mean absolute percentage error in PERCENT: (100/k) sum |(f - a)/a|.

    Raises:
        DataError: Any zero actual value (the ratio is undefined there).
    """
    a, f = _paired(actual, forecast)
    if np.any(a == 0.0):
        raise DataError("zero actual value makes MAPE undefined")
    return float(100.0 * np.mean(np.abs((f - a) / a)))


def rmse(actual, forecast) -> float:
    """Root mean squared error, sqrt((1/k) sum (forecast_t - actual_t)^2)."""
    a, f = _paired(actual, forecast)
    return float(np.sqrt(np.mean((f - a) ** 2)))


@dataclass(frozen=True)
class AccuracyReport:
    """The three metrics over k compared points; mape is in percent."""

    mae: float
    mape: float
    rmse: float
    k: int


def report(rows) -> list[AccuracyReport]:
    """Score several (label, actual, forecast) rows, preserving input order.

    Raises:
        DataError: Metric precondition violations, tagged with the row label.
    """
    out = []
    for label, actual, forecast in rows:
        try:
            a, f = _paired(actual, forecast)
            out.append(AccuracyReport(mae=mae(a, f), mape=mape(a, f),
                                      rmse=rmse(a, f), k=int(a.size)))
        except DataError as exc:
            raise DataError(f"{label}: {exc}") from exc
    return out
