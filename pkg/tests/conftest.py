from pathlib import Path

import numpy as np
import pytest

from helicity_algebra.config import SEED_ENV, Settings

DATA = Path(__file__).parent / "data"


@pytest.fixture
def rng():
    return np.random.default_rng(20011)


@pytest.fixture
def settings(monkeypatch):
    monkeypatch.delenv(SEED_ENV, raising=False)
    return Settings.load()


@pytest.fixture
def data_dir():
    return DATA
