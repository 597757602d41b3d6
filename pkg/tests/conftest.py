from pathlib import Path

import pytest

from airpick.types import SimConfig

DATA_DIR = Path(__file__).parent / "data"


@pytest.fixture
def cfg() -> SimConfig:
    return SimConfig()


@pytest.fixture
def data_dir() -> Path:
    return DATA_DIR
