"""ARMA representation, exact Gaussian likelihood, and maximum-likelihood fit.

The process is

    y_t = b0 + beta_1 y_{t-1} + ... + beta_p y_{t-p}
              - alpha_1 u_{t-1} - ... - alpha_q u_{t-q} + u_t

with iid Gaussian innovations u_t. Note the subtracted moving-average
convention: the additive-convention MA coefficients are ``-alpha``. The
intercept is stored as the process mean ``mu`` with ``b0 = mu * (1 - sum
beta)``.

The likelihood is exact, not conditional: the process is cast into a
state-space form of dimension ``max(p, q + 1)``, the initial state covariance
is the stationary solution of the discrete Lyapunov equation, and a Kalman
filter yields the prediction-error decomposition. Estimation profiles the
innovation variance out analytically, estimates the mean by generalized least
squares inside the same filter pass (models with differencing carry no mean
term), and searches the remaining coefficient space with Nelder-Mead on an
unconstrained parameterization that is stationary and invertible by
construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DataError, ModelError
from .optimize import nelder_mead
from .series import TimeSeries, difference

try:
    from numba import njit

    HAS_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without the extra
    HAS_NUMBA = False

    def njit(*args, **kwargs):
        def decorate(func):
            return func

        if args and callable(args[0]):
            return args[0]
        return decorate


MAX_AR_ORDER = 5
MAX_MA_ORDER = 5
MAX_DIFF = 2

PAC_LIMIT = 1.0 - 1e-8
SIMULATION_BURN_IN_FACTOR = 100

_LN_2PI = math.log(2.0 * math.pi)
_PENALTY = 1e300


@dataclass(frozen=True)
class ArimaOrder:
    """Model order (p, d, q) with the artifact caps p,q <= 5 and d <= 2."""

    p: int
    d: int
    q: int

    def __post_init__(self) -> None:
        if not (0 <= self.p <= MAX_AR_ORDER):
            raise ModelError(f"p={self.p} outside 0..{MAX_AR_ORDER}")
        if not (0 <= self.d <= MAX_DIFF):
            raise ModelError(f"d={self.d} outside 0..{MAX_DIFF}")
        if not (0 <= self.q <= MAX_MA_ORDER):
            raise ModelError(f"q={self.q} outside 0..{MAX_MA_ORDER}")


@dataclass(frozen=True)
class ArimaParams:
    """ARMA parameter set: mean, AR and MA coefficients, innovation variance.

    Attributes:
        mu: Process mean of the stationary (differenced) part.
        beta: AR coefficients beta_1..beta_p; the polynomial
            ``1 - beta_1 z - ... - beta_p z^p`` must have all roots outside
            the unit circle.
        alpha: MA coefficients in the subtracted convention (see module
            docstring); same root condition on ``1 - alpha_1 z - ...``.
        sigma2: Innovation variance. Zero is tolerated so noiseless
            simulation is expressible; likelihood evaluation requires > 0.
    """

    mu: float
    beta: tuple[float, ...]
    alpha: tuple[float, ...]
    sigma2: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "beta", tuple(float(b) for b in self.beta))
        object.__setattr__(self, "alpha", tuple(float(a) for a in self.alpha))
        object.__setattr__(self, "mu", float(self.mu))
        object.__setattr__(self, "sigma2", float(self.sigma2))
        if not math.isfinite(self.mu):
            raise ModelError("mu must be finite")
        if not math.isfinite(self.sigma2) or self.sigma2 < 0.0:
            raise ModelError(f"sigma2 must be nonnegative and finite, got {self.sigma2}")
        if len(self.beta) > MAX_AR_ORDER:
            raise ModelError(f"AR order {len(self.beta)} exceeds cap {MAX_AR_ORDER}")
        if len(self.alpha) > MAX_MA_ORDER:
            raise ModelError(f"MA order {len(self.alpha)} exceeds cap {MAX_MA_ORDER}")
        if not _is_stationary_polynomial(self.beta):
            raise ModelError(f"AR coefficients {self.beta} are not stationary")
        if not _is_stationary_polynomial(self.alpha):
            raise ModelError(f"MA coefficients {self.alpha} are not invertible")

    @property
    def beta0(self) -> float:
        """Intercept implied by the mean: ``mu * (1 - sum(beta))``."""
        return self.mu * (1.0 - sum(self.beta))


@dataclass(frozen=True, eq=False)
class FittedModel:
    """Estimation result: parameters, likelihood, innovations, and the data.

    Attributes:
        order: The (p, d, q) that was fitted.
        params: Estimated parameters.
        loglik: Maximized exact log-likelihood of the differenced series.
        residuals: One-step innovations on the differenced scale, n - d of them.
        heads: Leading observations retained by differencing.
        n_obs: Number of original observations.
        values: The original (undifferenced) observations, kept so forecasting
            and fitted-value reconstruction need no external state.
    """

    order: ArimaOrder
    params: ArimaParams
    loglik: float
    residuals: np.ndarray
    heads: tuple[float, ...]
    n_obs: int
    values: np.ndarray

    def __post_init__(self) -> None:
        residuals = np.asarray(self.residuals, dtype=float)
        residuals.flags.writeable = False
        object.__setattr__(self, "residuals", residuals)
        values = np.asarray(self.values, dtype=float)
        values.flags.writeable = False
        object.__setattr__(self, "values", values)
        if len(self.residuals) != self.n_obs - self.order.d:
            raise ModelError("residual length inconsistent with n_obs - d")
        if not math.isfinite(self.loglik):
            raise ModelError("log-likelihood must be finite")


def _pacs_to_coefficients(pacs: np.ndarray) -> np.ndarray:
    """Expand partial autocorrelations into polynomial coefficients."""
    k = len(pacs)
    coeffs = np.zeros(k)
    for m in range(k):
        prev = coeffs[:m].copy()
        coeffs[m] = pacs[m]
        for i in range(m):
            coeffs[i] = prev[i] - pacs[m] * prev[m - 1 - i]
    return coeffs


def _coefficients_to_pacs(coeffs) -> np.ndarray | None:
    """Invert :func:`_pacs_to_coefficients`; None when outside the region."""
    work = np.array(coeffs, dtype=float)
    k = len(work)
    pacs = np.zeros(k)
    for m in range(k - 1, -1, -1):
        kappa = work[m]
        if not np.isfinite(kappa) or abs(kappa) >= 1.0:
            return None
        pacs[m] = kappa
        denom = 1.0 - kappa * kappa
        prev = np.empty(m)
        for i in range(m):
            prev[i] = (work[i] + kappa * work[m - 1 - i]) / denom
        work[:m] = prev
    return pacs


def _is_stationary_polynomial(coeffs) -> bool:
    """True when ``1 - c_1 z - ... - c_k z^k`` has all roots outside the circle."""
    if len(coeffs) == 0:
        return True
    return _coefficients_to_pacs(coeffs) is not None


def constrain(raw) -> np.ndarray:
    """Map unconstrained reals to stationary (or invertible) coefficients.

    Each raw value passes through tanh to a partial autocorrelation in
    (-1, 1), then the Levinson-type recursion expands the partials into
    coefficients of ``1 - c_1 z - ...`` with all roots outside the unit
    circle. Partials are clipped a hair inside +-1 so the output keeps a
    positive stationarity margin for arbitrarily large raw inputs.
    """
    raws = np.asarray(raw, dtype=float)
    pacs = np.clip(np.tanh(raws), -PAC_LIMIT, PAC_LIMIT)
    return _pacs_to_coefficients(pacs)


def _state_space(beta, alpha) -> tuple[np.ndarray, np.ndarray]:
    """Transition matrix and innovation-impact outer product for the filter.

    Uses the compact representation of dimension m = max(p, q + 1): the AR
    coefficients run down the first column, ones sit on the superdiagonal,
    and the innovation loads through ``(1, -alpha_1, ..., -alpha_q)``.
    """
    p, q = len(beta), len(alpha)
    m = max(p, q + 1)
    transition = np.zeros((m, m))
    if p:
        transition[:p, 0] = beta
    for i in range(m - 1):
        transition[i, i + 1] = 1.0
    impact = np.zeros(m)
    impact[0] = 1.0
    if q:
        impact[1 : q + 1] = -np.asarray(alpha, dtype=float)
    return transition, np.outer(impact, impact)


def _stationary_covariance(transition: np.ndarray, impact_outer: np.ndarray) -> np.ndarray:
    """Solve ``P = T P T' + RR'`` exactly via the Kronecker-vectorized system."""
    m = transition.shape[0]
    eye = np.eye(m * m)
    system = eye - np.kron(transition, transition)
    vec = np.linalg.solve(system, impact_outer.reshape(-1))
    cov = vec.reshape(m, m)
    return 0.5 * (cov + cov.T)


def _filter_impl(w, transition, impact_outer, initial_cov):
    """Kalman filter pass over ``w`` and, in parallel, over a constant-ones
    series sharing the same gain sequence (used for GLS mean estimation).

    Returns innovations of both series, prediction variances in units of the
    innovation variance, the end-of-sample predicted states, the predicted
    state covariance, and a status flag (0 ok, 1 variance breakdown).
    """
    m = transition.shape[0]
    n = w.shape[0]
    innov = np.zeros(n)
    innov_ones = np.zeros(n)
    pred_var = np.zeros(n)
    state = np.zeros(m)
    state_ones = np.zeros(m)
    filt = np.zeros(m)
    filt_ones = np.zeros(m)
    cov = initial_cov.copy()
    cov_filt = np.zeros((m, m))
    cov_next = np.zeros((m, m))
    for t in range(n):
        variance = cov[0, 0]
        if not (variance > 1e-300) or not np.isfinite(variance):
            return innov, innov_ones, pred_var, state, state_ones, cov, 1
        pred_var[t] = variance
        err = w[t] - state[0]
        err_ones = 1.0 - state_ones[0]
        innov[t] = err
        innov_ones[t] = err_ones
        for i in range(m):
            gain = cov[i, 0] / variance
            filt[i] = state[i] + gain * err
            filt_ones[i] = state_ones[i] + gain * err_ones
        for i in range(m):
            for j in range(m):
                cov_filt[i, j] = cov[i, j] - cov[i, 0] * cov[0, j] / variance
        for i in range(m):
            acc = 0.0
            acc_ones = 0.0
            for j in range(m):
                acc += transition[i, j] * filt[j]
                acc_ones += transition[i, j] * filt_ones[j]
            state[i] = acc
            state_ones[i] = acc_ones
        for i in range(m):
            for j in range(m):
                acc = impact_outer[i, j]
                for k in range(m):
                    tik = transition[i, k]
                    if tik != 0.0:
                        for l in range(m):
                            acc += tik * cov_filt[k, l] * transition[j, l]
                cov_next[i, j] = acc
        for i in range(m):
            for j in range(m):
                cov[i, j] = 0.5 * (cov_next[i, j] + cov_next[j, i])
    return innov, innov_ones, pred_var, state, state_ones, cov, 0


_run_filter = njit(cache=True)(_filter_impl)


def _filter_series(w: np.ndarray, beta, alpha):
    """Build the state space for (beta, alpha) and filter ``w`` through it.

    Raises:
        ModelError: On prediction-variance breakdown or a singular
            stationary-covariance system.
    """
    transition, impact_outer = _state_space(beta, alpha)
    try:
        initial_cov = _stationary_covariance(transition, impact_outer)
    except np.linalg.LinAlgError as exc:
        raise ModelError("stationary covariance solve failed") from exc
    out = _run_filter(np.ascontiguousarray(w, dtype=float), transition, impact_outer, initial_cov)
    if out[-1] != 0:
        raise ModelError("innovation variance collapsed during filtering")
    return out[:-1]


def log_likelihood(params: ArimaParams, order: ArimaOrder, values) -> float:
    """Exact Gaussian log-likelihood of an ARMA(p, q) at fixed parameters.

    ``values`` must already be differenced; the mean ``params.mu`` is
    removed here. The filter is initialized at the stationary state
    distribution, so this is the joint density of the observations, not a
    conditional approximation.

    Raises:
        ModelError: On order/parameter mismatch, nonpositive sigma2, or
            numerical breakdown in the filter.
    """
    arr = np.asarray(values, dtype=float)
    if arr.size == 0:
        raise DataError("log-likelihood of an empty sample")
    if len(params.beta) != order.p or len(params.alpha) != order.q:
        raise ModelError("parameter lengths do not match the order")
    if params.sigma2 <= 0.0:
        raise ModelError("likelihood evaluation needs sigma2 > 0")
    innov, _, pred_var, _, _, _ = _filter_series(arr - params.mu, params.beta, params.alpha)
    n = arr.size
    quad = float(np.sum(innov * innov / pred_var)) / params.sigma2
    return -0.5 * (n * (_LN_2PI + math.log(params.sigma2)) + float(np.sum(np.log(pred_var))) + quad)


def _profile_pass(w: np.ndarray, beta, alpha, estimate_mean: bool):
    """One filter pass returning (negloglik, mu, sigma2, innovations)."""
    innov_w, innov_ones, pred_var, _, _, _ = _filter_series(w, beta, alpha)
    if estimate_mean:
        denom = float(np.sum(innov_ones * innov_ones / pred_var))
        mu = float(np.sum(innov_w * innov_ones / pred_var)) / denom
        innov = innov_w - mu * innov_ones
    else:
        mu = 0.0
        innov = innov_w
    n = w.size
    sigma2 = float(np.sum(innov * innov / pred_var)) / n
    if not (sigma2 > 0.0) or not math.isfinite(sigma2):
        return _PENALTY, mu, sigma2, innov
    negloglik = 0.5 * (
        n * (_LN_2PI + 1.0 + math.log(sigma2)) + float(np.sum(np.log(pred_var)))
    )
    return negloglik, mu, sigma2, innov


def fit(series: TimeSeries, order: ArimaOrder, *, step: float = 0.1,
        spread_tol: float = 1e-10, max_iter: int | None = None) -> FittedModel:
    """Maximum-likelihood fit of an ARIMA(p, d, q) model.

    Differences the series d times, then maximizes the exact likelihood over
    the AR and MA coefficients through the unconstrained parameterization of
    :func:`constrain`. The innovation variance is profiled out analytically;
    the mean is estimated by GLS when d = 0 and fixed at zero when d >= 1
    (differenced models carry no drift term here). The simplex search starts
    at zero raw coefficients and restarts once from its own solution, so the
    result is deterministic.

    Raises:
        DataError: Too few observations, or zero variance after differencing.
        ModelError: Optimizer failed to reach a finite likelihood.
    """
    n_total = len(series)
    if n_total - order.d < order.p + order.q + 3:
        raise DataError(
            f"need at least {order.p + order.q + 3 + order.d} observations "
            f"for order ({order.p},{order.d},{order.q}), got {n_total}"
        )
    diff = difference(series, order.d)
    w = np.asarray(diff.values, dtype=float)
    if np.all(w == w[0]):
        raise DataError("differenced series has zero variance")
    estimate_mean = order.d == 0
    p, q = order.p, order.q

    def objective(raw: np.ndarray) -> float:
        beta = constrain(raw[:p])
        alpha = constrain(raw[p:])
        try:
            negloglik, _, _, _ = _profile_pass(w, beta, alpha, estimate_mean)
        except ModelError:
            return _PENALTY
        return negloglik

    dim = p + q
    if dim == 0:
        best_raw = np.zeros(0)
    else:
        first = nelder_mead(objective, np.zeros(dim), step=step,
                            spread_tol=spread_tol, max_iter=max_iter)
        second = nelder_mead(objective, first.x, step=step,
                             spread_tol=spread_tol, max_iter=max_iter)
        best_raw = second.x if second.fun <= first.fun else first.x

    beta = constrain(best_raw[:p])
    alpha = constrain(best_raw[p:])
    try:
        negloglik, mu, sigma2, innov = _profile_pass(w, beta, alpha, estimate_mean)
    except ModelError as exc:
        raise ModelError(f"optimizer failed: {exc}") from exc
    if negloglik >= _PENALTY:
        raise ModelError("optimizer failed to produce a finite log-likelihood")
    params = ArimaParams(mu=mu, beta=tuple(beta), alpha=tuple(alpha), sigma2=sigma2)
    return FittedModel(
        order=order,
        params=params,
        loglik=-negloglik,
        residuals=innov,
        heads=diff.heads,
        n_obs=n_total,
        values=np.array(series.values, dtype=float),
    )


def residuals(model: FittedModel) -> np.ndarray:
    """One-step innovations of the fit, on the differenced scale."""
    return model.residuals


def simulate(params: ArimaParams, order: ArimaOrder, n: int, seed: int) -> TimeSeries:
    """Draw a sample path of the model, deterministically for a given seed.

    Gaussian innovations come from ``numpy.random.default_rng(seed)`` (the
    PCG64 stream). The recursion runs ``100 * max(p, q, 1)`` burn-in steps
    from a flat start at the mean before the kept stretch, then the kept
    values are cumulatively summed d times. Labels are 1..n.

    Raises:
        ModelError: On order/parameter mismatch or n < 1.
    """
    if n < 1:
        raise ModelError(f"n must be positive, got {n}")
    if len(params.beta) != order.p or len(params.alpha) != order.q:
        raise ModelError("parameter lengths do not match the order")
    p, q = order.p, order.q
    burn = SIMULATION_BURN_IN_FACTOR * max(p, q, 1)
    rng = np.random.default_rng(seed)
    shocks = math.sqrt(params.sigma2) * rng.standard_normal(burn + n)
    shock_buf = np.concatenate((np.zeros(q), shocks))
    x = np.empty(p + burn + n)
    x[:p] = params.mu
    b0 = params.beta0
    beta = params.beta
    alpha = params.alpha
    for t in range(burn + n):
        i = p + t
        value = b0 + shock_buf[q + t]
        for k in range(p):
            value += beta[k] * x[i - 1 - k]
        for k in range(q):
            value -= alpha[k] * shock_buf[q + t - 1 - k]
        x[i] = value
    kept = x[p + burn :]
    for _ in range(order.d):
        kept = np.cumsum(kept)
    return TimeSeries.from_values(kept)
