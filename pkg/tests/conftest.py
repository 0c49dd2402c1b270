import json
import sys
from pathlib import Path

import pytest

TESTS_DIR = Path(__file__).resolve().parent
sys.path.insert(0, str(TESTS_DIR))

DATA_DIR = TESTS_DIR / "data"


@pytest.fixture(scope="session")
def dark_dir() -> Path:
    return DATA_DIR / "dark"


@pytest.fixture(scope="session")
def dark_paths(dark_dir):
    paths = sorted(dark_dir.glob("*.png"))
    assert paths, "dark sample set missing; run tools/make_dark_samples.py"
    return paths


@pytest.fixture(scope="session")
def golden():
    return json.loads((DATA_DIR / "golden_enhance.json").read_text())
