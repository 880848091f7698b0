"""Exception hierarchy shared across the package."""

from __future__ import annotations


class RatecastError(Exception):
    """Base class for all errors raised by this package."""


class DataError(RatecastError):
    """Invalid or degenerate input data (bad CSV, zero variance, short series).

    Raised whenever a computation cannot proceed because of the data it was
    given rather than because of a caller mistake.
    """


class ModelError(RatecastError):
    """Invalid model specification or estimation failure."""
