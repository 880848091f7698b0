"""Multi-step forecasting on the original scale, plus in-sample fitted values.

Point forecasts iterate the state-space prediction step on the differenced
scale and are then integrated back through the retained series tail. Forecast
standard errors come from the joint covariance of the h differenced-scale
forecast errors, mapped through the cumulative-sum matrix once per
differencing level, so intervals widen correctly for d >= 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DataError
from .model import FittedModel, _filter_series, _state_space
from .series import integrate_forward

SQRT2 = math.sqrt(2.0)
SQRT_2PI = math.sqrt(2.0 * math.pi)

# Rational-approximation coefficients for the inverse normal CDF
# (lower/central/upper branches split at 0.02425).
_A = (-3.969683028665376e+01, 2.209460984245205e+02, -2.759285104469687e+02,
      1.383577518672690e+02, -3.066479806614716e+01, 2.506628277459239e+00)
_B = (-5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
      6.680131188771972e+01, -1.328068155288572e+01)
_C = (-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
      -2.549732539343734e+00, 4.374664141464968e+00, 2.938163982698783e+00)
_D = (7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
      3.754408661907416e+00)
_P_LOW = 0.02425


def _normal_cdf(x: float) -> float:
    return 0.5 * (1.0 + math.erf(x / SQRT2))


def normal_quantile(prob: float) -> float:
    """Inverse standard-normal CDF, absolute error well under 1e-8.

    A piecewise rational approximation supplies the starting value; one
    Newton step against the erf-based CDF polishes it to near machine
    precision (skipped only where the density underflows).

    Raises:
        ValueError: ``prob`` outside (0, 1).
    """
    if not (0.0 < prob < 1.0):
        raise ValueError(f"probability must lie in (0, 1), got {prob}")
    if prob < _P_LOW:
        q = math.sqrt(-2.0 * math.log(prob))
        x = ((((((_C[0] * q + _C[1]) * q + _C[2]) * q + _C[3]) * q + _C[4]) * q + _C[5])
             / ((((_D[0] * q + _D[1]) * q + _D[2]) * q + _D[3]) * q + 1.0))
    elif prob <= 1.0 - _P_LOW:
        q = prob - 0.5
        r = q * q
        x = ((((((_A[0] * r + _A[1]) * r + _A[2]) * r + _A[3]) * r + _A[4]) * r + _A[5]) * q
             / (((((_B[0] * r + _B[1]) * r + _B[2]) * r + _B[3]) * r + _B[4]) * r + 1.0))
    else:
        q = math.sqrt(-2.0 * math.log(1.0 - prob))
        x = -((((((_C[0] * q + _C[1]) * q + _C[2]) * q + _C[3]) * q + _C[4]) * q + _C[5])
              / ((((_D[0] * q + _D[1]) * q + _D[2]) * q + _D[3]) * q + 1.0))
    if 0.5 * x * x < 700.0:
        err = _normal_cdf(x) - prob
        x -= err * SQRT_2PI * math.exp(0.5 * x * x)
    return x


@dataclass(frozen=True, eq=False)
class ForecastResult:
    """Out-of-sample forecast on the original scale.

    Attributes:
        horizon: Number of steps ahead.
        points: Point forecasts.
        se: Forecast standard errors (same scale as points).
        lower: Lower interval bounds at ``level``.
        upper: Upper interval bounds.
        level: Two-sided coverage level in (0, 1).
    """

    horizon: int
    points: np.ndarray
    se: np.ndarray
    lower: np.ndarray
    upper: np.ndarray
    level: float

    def __post_init__(self) -> None:
        for field in ("points", "se", "lower", "upper"):
            arr = np.asarray(getattr(self, field), dtype=float)
            arr.flags.writeable = False
            object.__setattr__(self, field, arr)
            if arr.shape != (self.horizon,):
                raise DataError(f"{field} length does not match horizon {self.horizon}")
        if self.horizon < 1:
            raise DataError("horizon must be positive")
        if not (0.0 < self.level < 1.0):
            raise DataError(f"level must lie in (0, 1), got {self.level}")
        if np.any(self.lower > self.points) or np.any(self.points > self.upper):
            raise DataError("interval bounds must bracket the point forecasts")


@dataclass(frozen=True, eq=False)
class FittedValues:
    """In-sample one-step predictions on the original scale.

    The first ``warmup_count`` entries (d anchors plus the first genuine
    prediction, which leans on the stationary initial state alone) are
    flagged so consumers can exclude or mark them.
    """

    values: np.ndarray
    warmup_count: int

    def __post_init__(self) -> None:
        arr = np.asarray(self.values, dtype=float)
        arr.flags.writeable = False
        object.__setattr__(self, "values", arr)

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, index):
        return self.values[index]


def _differenced_tail(values: np.ndarray, d: int) -> tuple[list[float], np.ndarray]:
    """Last value at each differencing level (outermost first), and the
    fully differenced series."""
    tails: list[float] = []
    current = np.asarray(values, dtype=float)
    for _ in range(d):
        tails.append(float(current[-1]))
        current = np.diff(current)
    return tails, current


def forecast(model: FittedModel, h: int, level: float = 0.95) -> ForecastResult:
    """Forecast h steps ahead with prediction intervals.

    The filter is rerun to the end of the sample, the state prediction is
    iterated h times for the points, and the joint covariance of the
    differenced-scale forecast errors

        Cov(e_i, e_j) = Z T^(j-i) P_i Z' sigma^2,   P_{i+1} = T P_i T' + RR'

    is accumulated and pushed through the cumulative-sum map d times for the
    original-scale variances. Intervals are Gaussian: point +- z * se.

    Raises:
        DataError: h < 1 or level outside (0, 1).
    """
    if h < 1:
        raise DataError(f"horizon must be positive, got {h}")
    if not (0.0 < level < 1.0):
        raise DataError(f"level must lie in (0, 1), got {level}")
    params, order = model.params, model.order
    tails, w = _differenced_tail(model.values, order.d)
    transition, impact_outer = _state_space(params.beta, params.alpha)
    _, _, _, state, _, state_cov = _filter_series(w - params.mu, params.beta, params.alpha)

    points_diff = np.empty(h)
    error_cov = np.empty((h, h))
    pred_state = state.copy()
    pred_cov = state_cov.copy()
    for j in range(h):
        points_diff[j] = params.mu + pred_state[0]
        pred_state = transition @ pred_state
        cross = pred_cov.copy()
        error_cov[j, j] = cross[0, 0]
        for i in range(j + 1, h):
            cross = transition @ cross
            error_cov[j, i] = error_cov[i, j] = cross[0, 0]
        pred_cov = transition @ pred_cov @ transition.T + impact_outer
    error_cov *= params.sigma2

    cumsum = np.tri(h)
    mapped = error_cov
    for _ in range(order.d):
        mapped = cumsum @ mapped @ cumsum.T
    se = np.sqrt(np.maximum(np.diag(mapped), 0.0))

    points = integrate_forward(tails, points_diff)
    z = normal_quantile(0.5 * (1.0 + level))
    return ForecastResult(
        horizon=h,
        points=points,
        se=se,
        lower=points - z * se,
        upper=points + z * se,
        level=level,
    )


def fitted_values(model: FittedModel) -> FittedValues:
    """One-step-ahead in-sample predictions on the original scale.

    Computed through the filter identity: on the differenced scale the
    one-step prediction error is exactly the model residual, so the fitted
    value at t >= d is the observation minus its residual. The first d
    entries are the differencing anchors (equal to the observations by
    construction) and are flagged as warm-up together with the first real
    prediction.
    """
    d = model.order.d
    fitted = np.array(model.values, dtype=float)
    fitted[d:] -= model.residuals
    return FittedValues(values=fitted, warmup_count=min(d + 1, len(fitted)))
