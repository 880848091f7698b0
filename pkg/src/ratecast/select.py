"""Order selection by information criterion over a (p, q) grid."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DataError, ModelError
from .model import ArimaOrder, FittedModel, fit
from .series import TimeSeries

CRITERIA = ("aic", "bic")
DEFAULT_CRITERION = "bic"
DEFAULT_P_MAX = 3
DEFAULT_Q_MAX = 3


def aic(loglik: float, n_params: int) -> float:
    """Akaike information criterion, -2 loglik + 2 k.

    Callers count k = p + q + 2 (mean and innovation variance included).
    """
    return -2.0 * loglik + 2.0 * n_params


def bic(loglik: float, n_params: int, n: int) -> float:
    """Bayesian information criterion, -2 loglik + k ln(n).

    Raises:
        ValueError: n < 1.
    """
    if n < 1:
        raise ValueError(f"bic needs n >= 1, got {n}")
    return -2.0 * loglik + n_params * math.log(n)


@dataclass(frozen=True)
class CandidateRow:
    """One grid cell: the order, its criterion value, and convergence."""

    order: ArimaOrder
    criterion: float
    loglik: float
    converged: bool


@dataclass(frozen=True)
class SelectionResult:
    """Winning fit plus the full selection table in grid order."""

    best: FittedModel
    criterion_name: str
    table: tuple[CandidateRow, ...]


def _criterion_value(name: str, model: FittedModel) -> float:
    n_params = model.order.p + model.order.q + 2
    if name == "aic":
        return aic(model.loglik, n_params)
    return bic(model.loglik, n_params, model.n_obs - model.order.d)


def _selection_key(row: CandidateRow) -> tuple[float, int, int]:
    """Grid-winner ordering: criterion, then p + q, then p."""
    return (row.criterion, row.order.p + row.order.q, row.order.p)


def grid_search(series: TimeSeries, d: int, p_max: int = DEFAULT_P_MAX,
                q_max: int = DEFAULT_Q_MAX,
                criterion: str = DEFAULT_CRITERION) -> SelectionResult:
    """Fit every (p, q) in [0..p_max] x [0..q_max] at fixed d and pick the
    minimal-criterion converged candidate.

    Candidates the data cannot support (too short) or whose optimization
    fails appear in the table with ``converged=False`` and NaN scores rather
    than aborting the search. Ties break toward smaller p + q, then smaller
    p, so the result is deterministic.

    Raises:
        ValueError: Unknown criterion name or negative grid bounds.
        ModelError: No candidate converged.
    """
    name = criterion.lower()
    if name not in CRITERIA:
        raise ValueError(f"criterion must be one of {CRITERIA}, got {criterion!r}")
    if p_max < 0 or q_max < 0:
        raise ValueError("grid bounds must be nonnegative")
    rows: list[CandidateRow] = []
    fits: dict[tuple[int, int], FittedModel] = {}
    for p in range(p_max + 1):
        for q in range(q_max + 1):
            order = ArimaOrder(p=p, d=d, q=q)
            try:
                model = fit(series, order)
                value = _criterion_value(name, model)
            except (DataError, ModelError):
                rows.append(CandidateRow(order=order, criterion=math.nan,
                                         loglik=math.nan, converged=False))
                continue
            fits[(p, q)] = model
            rows.append(CandidateRow(order=order, criterion=value,
                                     loglik=model.loglik, converged=True))
    converged = [row for row in rows if row.converged]
    if not converged:
        raise ModelError("no candidate order converged")
    winner = min(converged, key=_selection_key)
    best = fits[(winner.order.p, winner.order.q)]
    return SelectionResult(best=best, criterion_name=name, table=tuple(rows))
