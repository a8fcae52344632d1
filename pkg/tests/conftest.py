import sys
from pathlib import Path

import numpy as np
import pytest

PROJECT_ROOT = str(Path(__file__).resolve().parents[1])
if PROJECT_ROOT not in sys.path:
    sys.path.insert(0, PROJECT_ROOT)

from zole.core.types import DisparityMap, Image, Origin, StereoPair  # noqa: E402
from zole.settings import get_settings  # noqa: E402


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: long-running end-to-end experiment (set ZOLE_RUN_SLOW=1)")


@pytest.fixture(autouse=True)
def _isolated_settings(monkeypatch):
    # tests never write log files and never read a developer's .env overrides
    for name in ("ZOLE_LOG_DIR", "ZOLE_LOG_LEVEL", "ZOLE_WORKERS", "ZOLE_LOG_RETENTION_DAYS"):
        monkeypatch.delenv(name, raising=False)
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture
def np_rng():
    return np.random.default_rng(1234)


@pytest.fixture
def shifted_pair():
    """Textured 3-channel 16×24 pair whose right view is the left shifted by 3 px."""
    h, w, d = 16, 24, 3
    ys, xs = np.mgrid[0:h, 0 : w + d]
    base = 127.5 + 60.0 * np.sin(0.7 * xs) * np.cos(0.4 * ys) + 40.0 * np.sin(0.23 * xs + 0.5 * ys)
    view = np.stack([base, np.roll(base, 1, axis=0), 255.0 - base], axis=2)
    left = Image(view[:, :w])
    right = Image(view[:, d:])
    return StereoPair(left, right, Origin.SYNTHETIC, DisparityMap(np.full((h, w), float(d))))
