import numpy as np
import pytest

from qsearch_tools.seeding import make_rng


@pytest.fixture
def rng() -> np.random.Generator:
    return make_rng(20240521)


@pytest.fixture
def out_dir(tmp_path, monkeypatch):
    monkeypatch.setattr("qsearch_tools.settings.OUTPUT_DIR", str(tmp_path))
    return tmp_path
