import subprocess
import sys

import pytest


@pytest.fixture(scope="session")
def pipeline_dir(tmp_path_factory):
    """Default-pipeline CSVs, produced through the simulator's public CLI."""
    out_dir = tmp_path_factory.mktemp("pipeline")
    subprocess.run(
        [sys.executable, "-m", "jamtexter.cli", "pipeline",
         "--seed", "42", "--out-dir", str(out_dir)],
        check=True,
        capture_output=True,
    )
    return out_dir
