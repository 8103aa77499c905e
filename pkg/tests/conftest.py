import sys
from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parent.parent
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))


def pytest_addoption(parser):
    parser.addoption("--run-long", action="store_true", default=False,
                     help="장시간 문제 (f_full 등) 까지 실행")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--run-long"):
        return
    skip_long = pytest.mark.skip(reason="--run-long 옵션이 있어야 실행")
    for item in items:
        if "long_running" in item.keywords:
            item.add_marker(skip_long)


@pytest.fixture
def problems_dir() -> Path:
    return ROOT / "problems"
