"""Core time-series containers, differencing, and summary statistics.

A :class:`TimeSeries` is an immutable, strictly ordered sequence of finite
observations labelled either by calendar year (int) or by calendar date
(:class:`datetime.date`). Differencing keeps the leading observation of every
level (the "heads") so that :func:`undifference` is an exact left inverse.
"""

from __future__ import annotations

import datetime as _dt
from dataclasses import dataclass, field

import numpy as np

from .errors import DataError

Timestamp = int | _dt.date

MAX_DIFF_ORDER = 2


def parse_timestamp(text: str) -> Timestamp:
    """Parse a ``YYYY`` or ``YYYY-MM-DD`` label into a comparable timestamp.

    Args:
        text: Label such as ``"2006"`` or ``"2006-01-31"``.

    Returns:
        An ``int`` year or a :class:`datetime.date`.

    Raises:
        DataError: If the label matches neither form.
    """
    text = text.strip()
    if text.isdigit() and len(text) == 4:
        return int(text)
    try:
        return _dt.date.fromisoformat(text)
    except ValueError:
        raise DataError(f"unparsable date label {text!r}; expected YYYY or YYYY-MM-DD") from None


def format_timestamp(ts: Timestamp) -> str:
    """Render a timestamp back to its canonical label."""
    if isinstance(ts, _dt.date):
        return ts.isoformat()
    return str(ts)


def next_timestamps(timestamps: tuple[Timestamp, ...], count: int) -> tuple[Timestamp, ...]:
    """Extend a timestamp sequence by ``count`` steps past its end.

    The step is the spacing between the last two labels; a single-point series
    falls back to one year or one day.
    """
    last = timestamps[-1]
    if isinstance(last, _dt.date):
        step = (last - timestamps[-2]) if len(timestamps) > 1 else _dt.timedelta(days=1)
        return tuple(last + step * (i + 1) for i in range(count))
    step = (last - timestamps[-2]) if len(timestamps) > 1 else 1
    return tuple(last + step * (i + 1) for i in range(count))


def _as_readonly_array(values) -> np.ndarray:
    arr = np.array(values, dtype=float)
    if arr.ndim != 1:
        raise DataError("values must be one-dimensional")
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True, eq=False)
class TimeSeries:
    """Ordered, finite-valued observations with strictly increasing labels.

    Attributes:
        timestamps: Year or date labels, strictly increasing, one kind per series.
        values: Finite observations, one per timestamp.
    """

    timestamps: tuple[Timestamp, ...]
    values: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "timestamps", tuple(self.timestamps))
        object.__setattr__(self, "values", _as_readonly_array(self.values))
        n = len(self.values)
        if n < 1:
            raise DataError("series must contain at least one observation")
        if len(self.timestamps) != n:
            raise DataError(f"{len(self.timestamps)} timestamps for {n} values")
        kinds = {isinstance(t, _dt.date) for t in self.timestamps}
        if len(kinds) > 1:
            raise DataError("timestamps mix year and date labels")
        for prev, cur in zip(self.timestamps, self.timestamps[1:]):
            if not cur > prev:
                raise DataError(
                    f"timestamps not strictly increasing at {format_timestamp(cur)}"
                )
        if not np.all(np.isfinite(self.values)):
            bad = int(np.flatnonzero(~np.isfinite(self.values))[0])
            raise DataError(f"non-finite value at {format_timestamp(self.timestamps[bad])}")

    def __len__(self) -> int:
        return len(self.values)

    @classmethod
    def from_values(cls, values, start: int = 1) -> "TimeSeries":
        """Build a series over consecutive integer labels starting at ``start``."""
        values = np.asarray(values, dtype=float)
        return cls(tuple(range(start, start + len(values))), values)


@dataclass(frozen=True, eq=False)
class DifferencedSeries:
    """Result of applying ``d`` rounds of first differencing.

    Attributes:
        values: The differenced observations, length ``n - d``.
        d: Number of differencing rounds applied.
        heads: First observation of every intermediate level, ``d`` entries,
            enough to invert the differencing exactly.
    """

    values: np.ndarray
    d: int
    heads: tuple[float, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", _as_readonly_array(self.values))
        object.__setattr__(self, "heads", tuple(float(h) for h in self.heads))
        if self.d < 0 or self.d > MAX_DIFF_ORDER:
            raise DataError(f"differencing order {self.d} outside 0..{MAX_DIFF_ORDER}")
        if len(self.heads) != self.d:
            raise DataError(f"{len(self.heads)} heads for d={self.d}")


@dataclass(frozen=True)
class SeriesSummary:
    """Count, mean, and population variance (divisor n) of a value sequence."""

    n: int
    mean: float
    variance: float


def difference(series: TimeSeries, d: int) -> DifferencedSeries:
    """Apply ``d`` rounds of first differencing.

    Args:
        series: Input observations.
        d: Differencing order, ``0 <= d <= 2``.

    Returns:
        The differenced values plus the retained heads.

    Raises:
        DataError: If ``d`` is out of range or the series is too short.
    """
    if d < 0 or d > MAX_DIFF_ORDER:
        raise DataError(f"differencing order {d} outside 0..{MAX_DIFF_ORDER}")
    if len(series) <= d:
        raise DataError(f"series of length {len(series)} too short for d={d}")
    current = np.asarray(series.values, dtype=float)
    heads = []
    for _ in range(d):
        heads.append(float(current[0]))
        current = np.diff(current)
    return DifferencedSeries(values=current, d=d, heads=tuple(heads))


def undifference(diff: DifferencedSeries) -> np.ndarray:
    """Invert :func:`difference`, reproducing the original value sequence.

    Integration proceeds from the innermost level outward: each head is
    prepended and the running sum restores that level exactly.
    """
    current = np.asarray(diff.values, dtype=float)
    for head in reversed(diff.heads):
        current = np.concatenate(([head], current)).cumsum()
    return current


def integrate_forward(tail_values, increments) -> np.ndarray:
    """Extend an integrated series past its end given future increments.

    Args:
        tail_values: The last observation at each differencing level, outermost
            (original scale) first; length gives the integration depth.
        increments: Future values on the fully differenced scale.

    Returns:
        The extension on the original scale, same length as ``increments``.
    """
    current = np.asarray(increments, dtype=float)
    for anchor in reversed(list(tail_values)):
        current = anchor + np.cumsum(current)
    return current


def summary(values) -> SeriesSummary:
    """Mean and population variance of a nonempty value sequence.

    Raises:
        DataError: On empty input.
    """
    arr = np.asarray(values, dtype=float)
    if arr.size == 0:
        raise DataError("cannot summarize an empty sequence")
    return SeriesSummary(n=int(arr.size), mean=float(arr.mean()), variance=float(arr.var()))
