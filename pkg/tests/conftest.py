"""Shared fixtures: JIT warm-up and bundled-data paths."""

from __future__ import annotations

from pathlib import Path

import numpy as np
import pytest

import ratecast as rc

DATA_DIR = Path(rc.__file__).parent / "data"


@pytest.fixture(scope="session", autouse=True)
def warm_filter():
    """Compile the filter kernel once so timed tests measure steady state."""
    series = rc.TimeSeries.from_values(np.random.default_rng(0).standard_normal(40))
    rc.fit(series, rc.ArimaOrder(1, 0, 1))


@pytest.fixture(scope="session")
def data_dir() -> Path:
    return DATA_DIR


@pytest.fixture(scope="session")
def fixture_csvs(data_dir) -> dict[str, Path]:
    return {
        "usd": data_dir / "usd_kzt.csv",
        "eur": data_dir / "eur_kzt.csv",
        "sgd": data_dir / "sgd_kzt.csv",
    }
