import os
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

DATA = Path(__file__).parent / "data"
LONGRUN = os.environ.get("DLX_LONGRUN", "") not in ("", "0")


def pytest_collection_modifyitems(config, items):
    if LONGRUN:
        return
    skip = pytest.mark.skip(reason="long-running; set DLX_LONGRUN=1")
    for item in items:
        if "longrun" in item.keywords:
            item.add_marker(skip)
