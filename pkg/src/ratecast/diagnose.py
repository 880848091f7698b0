"""Residual diagnostics: Ljung-Box randomness and Jarque-Bera normality tests.

Both tests need the chi-square distribution function, which in turn is the
regularized lower incomplete gamma function; that and the chi-square CDF are
implemented here from scratch (series expansion plus continued fraction) so
the package has no dependency beyond numpy.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import DataError
from .identify import CorrelogramPoint, _autocorrelations, acf
from .model import FittedModel

SIGNIFICANCE_LEVEL = 0.05
DEFAULT_MAX_LAG = 10

_MAX_TERMS = 600
_EPS = 1e-16
_TINY = 1e-300


def gamma_p(s: float, x: float) -> float:
    """Regularized lower incomplete gamma function P(s, x).

    Series expansion for x < s + 1, Lentz-style continued fraction for the
    upper tail otherwise; absolute error below 1e-10 across the domain.

    Args:
        s: Shape, > 0.
        x: Evaluation point, >= 0.

    Raises:
        ValueError: Outside the domain.
    """
    if not (s > 0.0) or not math.isfinite(s):
        raise ValueError(f"gamma_p needs s > 0, got {s}")
    if x < 0.0 or not math.isfinite(x):
        raise ValueError(f"gamma_p needs x >= 0, got {x}")
    if x == 0.0:
        return 0.0
    log_scale = -x + s * math.log(x) - math.lgamma(s)
    if x < s + 1.0:
        term = 1.0 / s
        total = term
        denom = s
        for _ in range(_MAX_TERMS):
            denom += 1.0
            term *= x / denom
            total += term
            if abs(term) < abs(total) * _EPS:
                break
        return min(1.0, total * math.exp(log_scale))
    b = x + 1.0 - s
    c = 1.0 / _TINY
    d = 1.0 / b
    h = d
    for i in range(1, _MAX_TERMS):
        an = -i * (i - s)
        b += 2.0
        d = an * d + b
        if abs(d) < _TINY:
            d = _TINY
        c = b + an / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _EPS:
            break
    return max(0.0, 1.0 - math.exp(log_scale) * h)


def chi_square_cdf(x: float, df: int) -> float:
    """Chi-square distribution function with ``df`` degrees of freedom."""
    if df < 1:
        raise ValueError(f"chi-square needs df >= 1, got {df}")
    if x <= 0.0:
        return 0.0
    return gamma_p(0.5 * df, 0.5 * x)


class LjungBoxResult(NamedTuple):
    stat: float
    df: int
    p: float


class JarqueBeraResult(NamedTuple):
    stat: float
    p: float


def ljung_box(resid, h: int, fitted_count: int) -> LjungBoxResult:
    """Ljung-Box portmanteau test of residual autocorrelation.

    Q = n(n+2) sum_{k=1..h} r_k^2 / (n - k) with r_k the residual ACF, tested
    against chi-square with h - fitted_count degrees of freedom.

    Args:
        resid: Residual sequence, length >= h + 1, nonconstant.
        h: Number of lags pooled, >= 1.
        fitted_count: Parameters estimated in the model that produced the
            residuals (p + q for an ARMA fit); must be < h.

    Raises:
        DataError: Violated preconditions.
    """
    arr = np.asarray(resid, dtype=float)
    if h < 1:
        raise DataError(f"h must be positive, got {h}")
    if fitted_count < 0:
        raise DataError(f"fitted_count must be nonnegative, got {fitted_count}")
    if h <= fitted_count:
        raise DataError(f"h={h} leaves no degrees of freedom after {fitted_count} fitted parameters")
    n = arr.size
    if n < h + 1:
        raise DataError(f"need at least {h + 1} residuals for h={h}, got {n}")
    if np.all(arr == arr[0]):
        raise DataError("zero-variance residuals")
    r = _autocorrelations(arr, h)
    lags = np.arange(1, h + 1)
    stat = float(n * (n + 2) * np.sum(r[1:] ** 2 / (n - lags)))
    df = h - fitted_count
    p = 1.0 - chi_square_cdf(stat, df)
    return LjungBoxResult(stat=stat, df=df, p=p)


def jarque_bera(resid) -> JarqueBeraResult:
    """Jarque-Bera normality test from sample skewness and kurtosis.

    JB = (n/6)(S^2 + (K-3)^2/4), with divisor-n central moments, referred to
    chi-square with 2 degrees of freedom.

    Raises:
        DataError: Fewer than 8 residuals, or zero variance.
    """
    arr = np.asarray(resid, dtype=float)
    n = arr.size
    if n < 8:
        raise DataError(f"need at least 8 residuals, got {n}")
    if np.all(arr == arr[0]):
        raise DataError("zero-variance residuals")
    centered = arr - arr.mean()
    m2 = float(np.mean(centered**2))
    m3 = float(np.mean(centered**3))
    m4 = float(np.mean(centered**4))
    skew = m3 / m2**1.5
    kurt = m4 / (m2 * m2)
    stat = (n / 6.0) * (skew**2 + 0.25 * (kurt - 3.0) ** 2)
    p = 1.0 - chi_square_cdf(stat, 2)
    return JarqueBeraResult(stat=stat, p=p)


@dataclass(frozen=True)
class DiagnosticsReport:
    """Joint residual diagnostics with 0.05-level pass flags."""

    ljung_box_stat: float
    ljung_box_df: int
    ljung_box_p: float
    jarque_bera_stat: float
    jarque_bera_p: float
    residual_acf: tuple[CorrelogramPoint, ...]
    uncorrelated_pass: bool
    normal_pass: bool


def diagnose(model: FittedModel, h: int | None = None) -> DiagnosticsReport:
    """Run both residual tests on a fitted model.

    The Ljung-Box fitted-parameter count is p + q. When ``h`` is omitted it
    defaults to ``min(10, n // 5)`` (at least 1), with n the residual count;
    an explicit ``h`` is passed through unchanged.

    Raises:
        DataError: Propagated from the underlying tests when the residual
            sample is too short, constant, or h leaves no degrees of freedom.
    """
    resid = model.residuals
    if h is None:
        h = max(1, min(DEFAULT_MAX_LAG, resid.size // 5))
    fitted_count = model.order.p + model.order.q
    lb = ljung_box(resid, h, fitted_count)
    jb = jarque_bera(resid)
    residual_acf = tuple(acf(resid, h))
    return DiagnosticsReport(
        ljung_box_stat=lb.stat,
        ljung_box_df=lb.df,
        ljung_box_p=lb.p,
        jarque_bera_stat=jb.stat,
        jarque_bera_p=jb.p,
        residual_acf=residual_acf,
        uncorrelated_pass=lb.p > SIGNIFICANCE_LEVEL,
        normal_pass=jb.p > SIGNIFICANCE_LEVEL,
    )
