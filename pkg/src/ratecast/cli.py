"""Command-line driver: CSV in, JSON report out, optional plot-data CSV.

Commands mirror the modelling pipeline: ``identify`` suggests orders,
``fit`` estimates a model, ``forecast`` extends it past the sample,
``evaluate`` scores two columns of a CSV against each other, and
``backtest`` scores the model's own in-sample one-step predictions.

Exit codes: 0 success, 1 data/model error (single ``error:`` line on
stderr), 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .diagnose import DiagnosticsReport, diagnose
from .errors import DataError, RatecastError
from .evaluate import mae, mape, rmse
from .forecast import ForecastResult, FittedValues, fitted_values, forecast
from .identify import acf, classify, pacf, select_d
from .model import ArimaOrder, FittedModel, fit
from .select import CRITERIA, DEFAULT_CRITERION, _criterion_value, grid_search
from .series import TimeSeries, difference, format_timestamp, next_timestamps, parse_timestamp

COMMANDS = ("identify", "fit", "forecast", "evaluate", "backtest")
PLOT_HEADER = "date,actual,fitted,forecast,lower,upper"
DEFAULT_HORIZON = 3
DEFAULT_LEVEL = 0.95
IDENTIFY_MAX_LAG = 10


@dataclass(frozen=True)
class Dataset:
    """A named series, as loaded from one CSV column."""

    name: str
    series: TimeSeries

    def __post_init__(self) -> None:
        if not self.name:
            raise DataError("dataset name must be nonempty")


@dataclass(frozen=True)
class RunConfig:
    """Everything one invocation needs; built from parsed CLI flags."""

    command: str
    input: str
    column: str = "value"
    order: tuple[int, int, int] | None = None
    auto: bool = False
    criterion: str = DEFAULT_CRITERION
    horizon: int = DEFAULT_HORIZON
    level: float = DEFAULT_LEVEL
    forecast_column: str = "forecast"
    output: str | None = None
    plot_data: str | None = None
    format: str = "json"

    def __post_init__(self) -> None:
        if self.command not in COMMANDS:
            raise DataError(f"unknown command {self.command!r}")
        if self.auto and self.order is not None:
            raise DataError("--auto and --order are mutually exclusive")


def parse_csv(text: str, column: str = "value", name: str | None = None) -> Dataset:
    """Parse ``date,value`` CSV text into a Dataset.

    The first header cell must be ``date``; extra columns are allowed and
    ``column`` picks the one to read. Dates are either all years (YYYY) or
    all ISO dates (YYYY-MM-DD) and must be strictly increasing; values must
    be finite decimals. CRLF input is tolerated.

    Raises:
        DataError: Empty input, bad header, unparsable cells, non-increasing
            dates, or non-finite values.
    """
    rows = [row for row in csv.reader(text.splitlines()) if any(cell.strip() for cell in row)]
    if not rows:
        raise DataError("empty input: no header row")
    header = [cell.strip() for cell in rows[0]]
    if header[0] != "date":
        raise DataError(f"first header column must be 'date', got {header[0]!r}")
    if column not in header[1:]:
        raise DataError(f"column {column!r} not found in header {header!r}")
    index = header.index(column)
    if len(rows) == 1:
        raise DataError("empty input: header row but no data")
    timestamps = []
    values = []
    for lineno, row in enumerate(rows[1:], start=2):
        cells = [cell.strip() for cell in row]
        if len(cells) != len(header):
            raise DataError(f"line {lineno}: expected {len(header)} cells, got {len(cells)}")
        timestamps.append(parse_timestamp(cells[0]))
        try:
            value = float(cells[index])
        except ValueError as exc:
            raise DataError(f"line {lineno}: unparsable value {cells[index]!r}") from exc
        if not math.isfinite(value):
            raise DataError(f"line {lineno}: non-finite value {cells[index]!r}")
        values.append(value)
    series = TimeSeries(timestamps=tuple(timestamps), values=np.array(values))
    return Dataset(name=name or column, series=series)


def _format_number(value: float) -> str:
    """Shortest decimal string that round-trips to the exact float."""
    return repr(float(value))


def emit_report(sections: dict) -> str:
    """Serialize a report dict deterministically, preserving key order.

    Floats use their shortest round-trip representation, so re-parsing and
    re-serializing the document is byte-identical.
    """
    return json.dumps(sections, indent=2, ensure_ascii=False) + "\n"


def emit_plot_data(dataset: Dataset, fitted: FittedValues | None,
                   fc: ForecastResult | None) -> str:
    """Plot-ready CSV: n in-sample rows plus h forecast rows.

    In-sample rows carry date, actual, and (when given) fitted; forecast
    rows carry date, forecast, lower, upper. Cells that do not apply stay
    empty. All numbers are emitted in round-trip representation, so parsing
    them back recovers the exact source values.

    Raises:
        DataError: Fitted values not aligned with the series.
    """
    series = dataset.series
    n = len(series)
    if fitted is not None and len(fitted) != n:
        raise DataError(f"fitted length {len(fitted)} does not match series length {n}")
    lines = [PLOT_HEADER]
    for t in range(n):
        fitted_cell = _format_number(fitted.values[t]) if fitted is not None else ""
        lines.append(
            f"{format_timestamp(series.timestamps[t])},{_format_number(series.values[t])},"
            f"{fitted_cell},,,"
        )
    if fc is not None:
        future = next_timestamps(series.timestamps, fc.horizon)
        for j in range(fc.horizon):
            lines.append(
                f"{format_timestamp(future[j])},,,{_format_number(fc.points[j])},"
                f"{_format_number(fc.lower[j])},{_format_number(fc.upper[j])}"
            )
    return "\n".join(lines) + "\n"


def _order_section(order: ArimaOrder) -> dict:
    return {"p": order.p, "d": order.d, "q": order.q}


def _params_section(model: FittedModel) -> dict:
    params = model.params
    return {
        "mu": params.mu,
        "beta": list(params.beta),
        "alpha_paper_sign": list(params.alpha),
        "sigma2": params.sigma2,
    }


def _diagnostics_section(report: DiagnosticsReport) -> dict:
    return {
        "ljung_box": {
            "stat": report.ljung_box_stat,
            "df": report.ljung_box_df,
            "p": report.ljung_box_p,
        },
        "jarque_bera": {
            "stat": report.jarque_bera_stat,
            "p": report.jarque_bera_p,
        },
    }


def _try_diagnostics(model: FittedModel) -> DiagnosticsReport | None:
    """Diagnostics with h adapted to short samples; None when infeasible."""
    n_resid = len(model.residuals)
    fitted_count = model.order.p + model.order.q
    h = max(min(10, n_resid // 5), fitted_count + 1)
    if n_resid < h + 1:
        return None
    try:
        return diagnose(model, h)
    except RatecastError:
        return None


def _fit_model(dataset: Dataset, config: RunConfig) -> tuple[FittedModel, float]:
    """Fit per config (explicit order or auto-selected); returns the model
    and its criterion value under ``config.criterion``."""
    series = dataset.series
    if config.auto:
        d = select_d(series)
        selection = grid_search(series, d, criterion=config.criterion)
        return selection.best, _criterion_value(config.criterion, selection.best)
    if config.order is None:
        raise DataError("either --order or --auto is required")
    p, d, q = config.order
    model = fit(series, ArimaOrder(p=p, d=d, q=q))
    return model, _criterion_value(config.criterion, model)


def _metrics_section(actual: np.ndarray, predicted: np.ndarray) -> dict:
    return {
        "mae": mae(actual, predicted),
        "mape_percent": mape(actual, predicted),
        "rmse": rmse(actual, predicted),
        "k": int(len(actual)),
    }


def _execute(config: RunConfig) -> tuple[dict, str | None]:
    """Run the configured command; returns (report dict, plot CSV or None)."""
    try:
        text = Path(config.input).read_text(encoding="utf-8")
    except OSError as exc:
        raise DataError(f"cannot read {config.input}: {exc}") from exc
    stem = Path(config.input).stem
    name = stem if config.column == "value" else f"{stem}[{config.column}]"
    dataset = parse_csv(text, column=config.column, name=name)
    doc: dict = {"command": config.command, "dataset": dataset.name}
    plot_text: str | None = None

    if config.command == "identify":
        series = dataset.series
        d = select_d(series)
        diffed = difference(series, d).values
        max_lag = min(IDENTIFY_MAX_LAG, len(diffed) - 1)
        if max_lag < 1:
            raise DataError("series too short to identify")
        acf_points = acf(diffed, max_lag)
        pacf_points = pacf(diffed, max_lag)
        pattern = classify(acf_points, pacf_points, len(diffed))
        doc["identification"] = {
            "suggested_d": d,
            "pattern": {
                "kind": pattern.kind.value,
                "suggested_p": pattern.suggested_p,
                "suggested_q": pattern.suggested_q,
            },
            "acf": [{"lag": pt.lag, "value": pt.value, "band": pt.band} for pt in acf_points],
            "pacf": [{"lag": pt.lag, "value": pt.value, "band": pt.band} for pt in pacf_points],
        }
        return doc, None

    if config.command == "evaluate":
        predicted = parse_csv(text, column=config.forecast_column, name=name)
        doc["metrics"] = _metrics_section(dataset.series.values, predicted.series.values)
        return doc, None

    model, criterion_value = _fit_model(dataset, config)
    doc["order"] = _order_section(model.order)
    doc["params"] = _params_section(model)
    doc["loglik"] = model.loglik
    doc["criterion"] = {"name": config.criterion, "value": criterion_value}
    diag = _try_diagnostics(model)
    if diag is not None:
        doc["diagnostics"] = _diagnostics_section(diag)

    if config.command == "forecast":
        fc = forecast(model, config.horizon, config.level)
        doc["forecast"] = {
            "points": [float(v) for v in fc.points],
            "se": [float(v) for v in fc.se],
            "lower": [float(v) for v in fc.lower],
            "upper": [float(v) for v in fc.upper],
            "level": fc.level,
        }
        if config.plot_data:
            plot_text = emit_plot_data(dataset, fitted_values(model), fc)
    elif config.command == "backtest":
        fv = fitted_values(model)
        d = model.order.d
        doc["metrics"] = _metrics_section(dataset.series.values[d:], fv.values[d:])
        if config.plot_data:
            plot_text = emit_plot_data(dataset, fv, None)
    return doc, plot_text


def run(config: RunConfig) -> int:
    """Execute a command and write its outputs; returns the exit code."""
    try:
        doc, plot_text = _execute(config)
        payload = emit_report(doc)
        if config.output:
            Path(config.output).write_text(payload, encoding="utf-8", newline="")
        else:
            sys.stdout.write(payload)
        if plot_text is not None and config.plot_data:
            Path(config.plot_data).write_text(plot_text, encoding="utf-8", newline="")
    except RatecastError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


class _Parser(argparse.ArgumentParser):
    """ArgumentParser whose failures match the error-line contract."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(2)


def _order_argument(text: str) -> tuple[int, int, int]:
    parts = text.split(",")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"order must be p,d,q, got {text!r}")
    try:
        p, d, q = (int(part) for part in parts)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"order must be three integers, got {text!r}") from exc
    return p, d, q


def _add_io_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--input", required=True, help="input CSV path")
    parser.add_argument("--column", default="value", help="value column name (default: value)")
    parser.add_argument("--output", default=None, help="write the JSON report here instead of stdout")


def _add_model_arguments(parser: argparse.ArgumentParser) -> None:
    group = parser.add_mutually_exclusive_group(required=True)
    group.add_argument("--order", type=_order_argument, default=None,
                       help="explicit order as p,d,q")
    group.add_argument("--auto", action="store_true",
                       help="select d by variance and (p, q) by criterion grid search")
    parser.add_argument("--criterion", choices=CRITERIA, default=DEFAULT_CRITERION,
                        help=f"information criterion (default: {DEFAULT_CRITERION})")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ratecast",
                     description="ARIMA identification, fitting, forecasting, and evaluation.")
    subparsers = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    identify = subparsers.add_parser("identify", help="suggest d and an ARMA pattern")
    _add_io_arguments(identify)

    fit_cmd = subparsers.add_parser("fit", help="estimate a model")
    _add_io_arguments(fit_cmd)
    _add_model_arguments(fit_cmd)

    forecast_cmd = subparsers.add_parser("forecast", help="fit and forecast ahead")
    _add_io_arguments(forecast_cmd)
    _add_model_arguments(forecast_cmd)
    forecast_cmd.add_argument("--horizon", type=int, default=DEFAULT_HORIZON,
                              help=f"steps ahead (default: {DEFAULT_HORIZON})")
    forecast_cmd.add_argument("--level", type=float, default=DEFAULT_LEVEL,
                              help=f"interval coverage in (0,1) (default: {DEFAULT_LEVEL})")
    forecast_cmd.add_argument("--plot-data", default=None,
                              help="also write plot-ready CSV to this path")

    evaluate_cmd = subparsers.add_parser("evaluate", help="score forecast column against actuals")
    _add_io_arguments(evaluate_cmd)
    evaluate_cmd.add_argument("--forecast-column", default="forecast",
                              help="forecast column name (default: forecast)")

    backtest_cmd = subparsers.add_parser("backtest", help="score in-sample one-step predictions")
    _add_io_arguments(backtest_cmd)
    _add_model_arguments(backtest_cmd)
    backtest_cmd.add_argument("--plot-data", default=None,
                              help="also write plot-ready CSV to this path")
    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    return RunConfig(
        command=args.command,
        input=args.input,
        column=args.column,
        order=getattr(args, "order", None),
        auto=getattr(args, "auto", False),
        criterion=getattr(args, "criterion", DEFAULT_CRITERION),
        horizon=getattr(args, "horizon", DEFAULT_HORIZON),
        level=getattr(args, "level", DEFAULT_LEVEL),
        forecast_column=getattr(args, "forecast_column", "forecast"),
        output=args.output,
        plot_data=getattr(args, "plot_data", None),
    )


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return run(_config_from_args(args))
