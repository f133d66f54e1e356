import shutil
import subprocess
import sys
from pathlib import Path

import pytest

from efs_extractor.testclip import make_test_clip

DATA_DIR = Path(__file__).parent / "data"
CLIP_PATH = DATA_DIR / "clip10s.avi"


@pytest.fixture(scope="session")
def clip10s() -> Path:
    """The bundled 10-second test clip (regenerated if missing)."""
    if not CLIP_PATH.exists():
        DATA_DIR.mkdir(exist_ok=True)
        make_test_clip(CLIP_PATH, seconds=10, native_fps=10)
    return CLIP_PATH


def run_core_cli(args: list[str]) -> subprocess.CompletedProcess:
    """Invoke the selection engine's CLI (its external interface)."""
    exe = shutil.which("efs")
    cmd = [exe] if exe else [sys.executable, "-m", "efs.cli"]
    return subprocess.run(
        cmd + [str(a) for a in args], capture_output=True, text=True
    )
