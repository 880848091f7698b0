"""ratecast: Box-Jenkins ARIMA modelling and forecasting for small series.

The pipeline follows the classical four steps: identification (ACF/PACF,
differencing order), estimation (exact maximum likelihood through a
state-space filter), diagnostic checking (Ljung-Box, Jarque-Bera), and
forecasting with prediction intervals. A CLI (``ratecast``) drives the same
pipeline over CSV files and emits JSON reports plus plot-ready data.
"""

from .diagnose import (
    DiagnosticsReport,
    JarqueBeraResult,
    LjungBoxResult,
    chi_square_cdf,
    diagnose,
    gamma_p,
    jarque_bera,
    ljung_box,
)
from .errors import DataError, ModelError, RatecastError
from .evaluate import AccuracyReport, mae, mape, report, rmse
from .forecast import (
    FittedValues,
    ForecastResult,
    fitted_values,
    forecast,
    normal_quantile,
)
from .identify import (
    CorrelogramPoint,
    PatternKind,
    PatternSuggestion,
    acf,
    classify,
    pacf,
    select_d,
)
from .model import (
    ArimaOrder,
    ArimaParams,
    FittedModel,
    constrain,
    fit,
    log_likelihood,
    residuals,
    simulate,
)
from .select import (
    CandidateRow,
    SelectionResult,
    aic,
    bic,
    grid_search,
)
from .series import (
    DifferencedSeries,
    SeriesSummary,
    TimeSeries,
    difference,
    integrate_forward,
    summary,
    undifference,
)

__version__ = "0.1.0"

__all__ = [
    "AccuracyReport",
    "ArimaOrder",
    "ArimaParams",
    "CandidateRow",
    "CorrelogramPoint",
    "DataError",
    "DiagnosticsReport",
    "DifferencedSeries",
    "FittedModel",
    "FittedValues",
    "ForecastResult",
    "JarqueBeraResult",
    "LjungBoxResult",
    "ModelError",
    "PatternKind",
    "PatternSuggestion",
    "RatecastError",
    "SelectionResult",
    "SeriesSummary",
    "TimeSeries",
    "acf",
    "aic",
    "bic",
    "chi_square_cdf",
    "classify",
    "constrain",
    "diagnose",
    "difference",
    "fit",
    "fitted_values",
    "forecast",
    "gamma_p",
    "grid_search",
    "integrate_forward",
    "jarque_bera",
    "ljung_box",
    "log_likelihood",
    "mae",
    "mape",
    "normal_quantile",
    "pacf",
    "report",
    "residuals",
    "rmse",
    "select_d",
    "simulate",
    "summary",
    "undifference",
]
