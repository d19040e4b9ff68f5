import os
import pathlib
import shutil

import pytest

ROOT = pathlib.Path(__file__).resolve().parents[2]


@pytest.fixture(scope="session")
def cli_binary():
    path = os.environ.get("STABKIT_CLI") or shutil.which("stabkit")
    if not path:
        candidate = ROOT / "build" / "tools" / "stabkit"
        path = str(candidate) if candidate.exists() else None
    if not path:
        pytest.skip("stabkit binary not found; set STABKIT_CLI")
    return path
