import sys
from pathlib import Path

import numpy as np
import pytest

from cambench.imgcore import load_depth, load_image

DATA = Path(__file__).parent / "data"


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    results = getattr(mod, "RESULTS", None) if mod else None
    if not results:
        return
    terminalreporter.section("acceptance scoreboard")
    for num, ok, detail in sorted(results):
        terminalreporter.write_line(
            f"[criterion {num:02d}] {'PASS' if ok else 'FAIL'}: {detail}"
        )


@pytest.fixture(scope="session")
def data_dir() -> Path:
    return DATA


@pytest.fixture(scope="session")
def scene256() -> np.ndarray:
    return load_image(DATA / "scene_256.png")


@pytest.fixture(scope="session")
def scenes() -> list:
    return [load_image(p) for p in sorted((DATA / "scenes").glob("*.png"))]


@pytest.fixture(scope="session")
def depths() -> list:
    return [load_depth(p, scale=0.01) for p in sorted((DATA / "depth").glob("*.png"))]


@pytest.fixture()
def small_scene(scenes) -> np.ndarray:
    # 128x96 crop keeps per-test operator cost low without losing texture
    return scenes[0][:96, :128].copy()
