import numpy as np
import pytest

from settings import LabSettings


@pytest.fixture(autouse=True)
def _isolated_env(monkeypatch):
    """Keep QWLAB_* variables from the developer's shell out of the tests."""
    for name in ("QWLAB_SAMPLE_FRAC", "QWLAB_EPSILON", "QWLAB_N_RANGE", "QWLAB_LOG_LEVEL", "QWLAB_JOURNAL_DIR"):
        monkeypatch.delenv(name, raising=False)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def settings():
    return LabSettings()
