"""Model identification: correlograms, differencing order, and pattern hints.

Implements the first Box-Jenkins stage. The sample autocorrelation uses the
biased (divisor n) estimator so the autocovariance sequence stays positive
semi-definite; partial autocorrelations then follow from the Durbin-Levinson
recursion without ever leaving [-1, 1].
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import DataError
from .series import TimeSeries, difference, summary

SIGNIFICANCE_Z = 1.96


@dataclass(frozen=True)
class CorrelogramPoint:
    """One correlogram entry: lag, value, and significance band half-width."""

    lag: int
    value: float
    band: float

    def significant(self) -> bool:
        """True when the value lies outside the +-band."""
        return abs(self.value) > self.band


class PatternKind(Enum):
    """Correlogram shape families used for order suggestion."""

    AR = "AR"
    MA = "MA"
    ARMA = "ARMA"
    NONE = "NONE"


@dataclass(frozen=True)
class PatternSuggestion:
    """Advisory (p, q) hint read off the ACF/PACF shapes."""

    kind: PatternKind
    suggested_p: int
    suggested_q: int


def _autocorrelations(arr: np.ndarray, max_lag: int) -> np.ndarray:
    centered = arr - arr.mean()
    denom = float(centered @ centered)
    r = np.empty(max_lag + 1)
    r[0] = 1.0
    for k in range(1, max_lag + 1):
        r[k] = float(centered[k:] @ centered[:-k]) / denom
    return r


def _validate_corr_input(values, max_lag: int) -> np.ndarray:
    arr = np.asarray(values, dtype=float)
    if max_lag < 1:
        raise DataError(f"max_lag must be positive, got {max_lag}")
    if len(arr) < max_lag + 1:
        raise DataError(f"need at least {max_lag + 1} observations for max_lag={max_lag}")
    if np.all(arr == arr[0]):
        raise DataError("zero-variance series has no correlogram")
    return arr


def acf(values, max_lag: int) -> list[CorrelogramPoint]:
    """Sample autocorrelation function for lags 0..max_lag.

    Uses the divisor-n estimator
    ``r_k = sum (y_t - ybar)(y_{t-k} - ybar) / sum (y_t - ybar)^2``.

    Raises:
        DataError: On zero-variance input or ``max_lag >= n``.
    """
    arr = _validate_corr_input(values, max_lag)
    band = SIGNIFICANCE_Z / np.sqrt(len(arr))
    r = _autocorrelations(arr, max_lag)
    return [CorrelogramPoint(lag=k, value=float(r[k]), band=float(band)) for k in range(max_lag + 1)]


def pacf(values, max_lag: int) -> list[CorrelogramPoint]:
    """Partial autocorrelations phi_kk for lags 1..max_lag via Durbin-Levinson.

    Raises:
        DataError: As :func:`acf`, plus recursion breakdown on degenerate input.
    """
    arr = _validate_corr_input(values, max_lag)
    band = SIGNIFICANCE_Z / np.sqrt(len(arr))
    r = _autocorrelations(arr, max_lag)
    phi_prev = np.zeros(max_lag + 1)
    points = []
    variance = 1.0
    for k in range(1, max_lag + 1):
        if k == 1:
            phi_kk = r[1]
        else:
            num = r[k] - float(phi_prev[1:k] @ r[k - 1 : 0 : -1])
            if variance <= 0.0:
                raise DataError(f"Durbin-Levinson breakdown at lag {k}: degenerate series")
            phi_kk = num / variance
        phi = phi_prev.copy()
        phi[k] = phi_kk
        phi[1:k] = phi_prev[1:k] - phi_kk * phi_prev[k - 1 : 0 : -1]
        variance *= 1.0 - phi_kk * phi_kk
        phi_prev = phi
        points.append(CorrelogramPoint(lag=k, value=float(phi_kk), band=float(band)))
    return points


def select_d(series: TimeSeries, max_d: int = 2) -> int:
    """Pick the differencing order minimizing sample variance.

    Scans d = 0..max_d and returns the d whose d-differenced series has the
    smallest population variance; ties go to the smaller d.

    Raises:
        DataError: If the series is too short (needs length > max_d + 2).
    """
    if len(series) <= max_d + 2:
        raise DataError(f"series of length {len(series)} too short for max_d={max_d}")
    best_d = 0
    best_var = summary(series.values).variance
    for d in range(1, max_d + 1):
        var = summary(difference(series, d).values).variance
        if var < best_var:
            best_d, best_var = d, var
    return best_d


def _shape(points: list[CorrelogramPoint]) -> tuple[str, int]:
    """Classify a correlogram as ('flat', 0), ('cutoff', k), or ('tails', 0).

    A cutoff at k needs lags 1..k all significant and everything after
    insignificant; a cutoff at the final lag cannot be distinguished from
    tailing off, so it counts as tails.
    """
    flags = [p.significant() for p in points if p.lag >= 1]
    if not any(flags):
        return "flat", 0
    last = max(i for i, sig in enumerate(flags) if sig) + 1
    if last < len(flags) and all(flags[:last]):
        return "cutoff", last
    return "tails", 0


def classify(acf_points: list[CorrelogramPoint], pacf_points: list[CorrelogramPoint],
             n: int) -> PatternSuggestion:
    """Suggest a model family from paired ACF/PACF correlograms.

    PACF cutoff with ACF tailing off reads as AR(p); ACF cutoff with PACF
    tailing off as MA(q); both tailing off as ARMA (suggested orders 1,1);
    nothing significant as NONE. When both cut off, the smaller order wins,
    AR on ties; a flat ACF or flat PACF with no clean cutoff on the other
    side also reads as NONE.
    """
    acf_shape, q_cut = _shape(acf_points)
    pacf_shape, p_cut = _shape(pacf_points)
    if pacf_shape == "cutoff" and acf_shape == "tails":
        return PatternSuggestion(PatternKind.AR, p_cut, 0)
    if acf_shape == "cutoff" and pacf_shape == "tails":
        return PatternSuggestion(PatternKind.MA, 0, q_cut)
    if acf_shape == "cutoff" and pacf_shape == "cutoff":
        if p_cut <= q_cut:
            return PatternSuggestion(PatternKind.AR, p_cut, 0)
        return PatternSuggestion(PatternKind.MA, 0, q_cut)
    if acf_shape == "tails" and pacf_shape == "tails":
        return PatternSuggestion(PatternKind.ARMA, 1, 1)
    return PatternSuggestion(PatternKind.NONE, 0, 0)
