import sys
import time

import pytest

from src.entities.config import load_config
from src.pipeline.commands import cmd_recover
from tests.fixtures import large_project

resource = pytest.importorskip("resource")

TIME_BUDGET_SECONDS = 600
MEMORY_BUDGET_BYTES = 4 * 1024 ** 3


def peak_rss_bytes() -> int:
    peak = resource.getrusage(resource.RUSAGE_SELF).ru_maxrss
    return peak if sys.platform == "darwin" else peak * 1024


@pytest.mark.slow
def test_recover_ten_thousand_files_within_budget(tmp_path):
    project = large_project(tmp_path)
    assert project["files"] == 10_000
    assert project["edges"] == 100_000

    config = load_config(None, {
        "deps": str(project["deps"]),
        "source_root": str(project["source_root"]),
        "output_dir": str(tmp_path / "out"),
        "verbose": False,
    })
    started = time.perf_counter()
    result = cmd_recover(config)
    elapsed = time.perf_counter() - started

    assert len(result.architecture.universe) == 10_000
    assert 1 < len(result.architecture) < 10_000
    assert (tmp_path / "out" / "architecture.rsf").exists()
    assert elapsed < TIME_BUDGET_SECONDS, f"recovery took {elapsed:.0f}s"
    assert peak_rss_bytes() < MEMORY_BUDGET_BYTES
