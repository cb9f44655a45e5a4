import json

import pytest

from jamtexter.config import default_config
from jamtexter.pipeline import (
    GRID_FILENAME,
    LOSSES_FILENAME,
    MANIFEST_FILENAME,
    TEXTING_FILENAME,
    run_pipeline,
)


def run_into(tmp_path, name, **overrides):
    out_dir = tmp_path / name
    out_dir.mkdir()
    config = default_config(out_dir=str(out_dir), **overrides)
    manifest = run_pipeline(config)
    return out_dir, manifest


def test_artifacts_and_row_counts(tmp_path):
    out_dir, manifest = run_into(tmp_path, "run", seed=42)
    for name in (GRID_FILENAME, TEXTING_FILENAME, LOSSES_FILENAME, MANIFEST_FILENAME):
        assert (out_dir / name).is_file()
    assert manifest.rows == {"grid": 1024, "texting": 6000, "losses": 36}
    for name, key in ((GRID_FILENAME, "grid"), (TEXTING_FILENAME, "texting"),
                      (LOSSES_FILENAME, "losses")):
        lines = (out_dir / name).read_text().splitlines()
        assert len(lines) - 1 == manifest.rows[key]


def test_manifest_contents(tmp_path):
    out_dir, manifest = run_into(tmp_path, "run", seed=42)
    on_disk = json.loads((out_dir / MANIFEST_FILENAME).read_text())
    assert set(on_disk) == {"config_sha256", "seed", "version", "rows", "duration_ms"}
    assert on_disk["seed"] == 42
    assert on_disk["config_sha256"] == manifest.config_sha256
    assert "jamtexter" in on_disk["version"] and "philox" in on_disk["version"]
    assert on_disk["rows"] == {"grid": 1024, "texting": 6000, "losses": 36}
    assert on_disk["duration_ms"] > 0


def test_reruns_are_byte_identical(tmp_path):
    dir_a, man_a = run_into(tmp_path, "a", seed=42)
    dir_b, man_b = run_into(tmp_path, "b", seed=42)
    for name in (GRID_FILENAME, TEXTING_FILENAME, LOSSES_FILENAME):
        assert (dir_a / name).read_bytes() == (dir_b / name).read_bytes()
    a = json.loads((dir_a / MANIFEST_FILENAME).read_text())
    b = json.loads((dir_b / MANIFEST_FILENAME).read_text())
    a.pop("duration_ms"), b.pop("duration_ms")
    assert a == b
    assert man_a.config_sha256 == man_b.config_sha256


def test_seed_only_touches_the_texting_stage(tmp_path):
    dir_a, _ = run_into(tmp_path, "a", seed=1)
    dir_b, _ = run_into(tmp_path, "b", seed=2)
    assert (dir_a / GRID_FILENAME).read_bytes() == (dir_b / GRID_FILENAME).read_bytes()
    assert (dir_a / TEXTING_FILENAME).read_bytes() != (dir_b / TEXTING_FILENAME).read_bytes()


def test_missing_parent_directory_is_io_error(tmp_path):
    config = default_config(out_dir=str(tmp_path / "nope" / "run"))
    with pytest.raises(OSError):
        run_pipeline(config)


def test_trial_count_scales_rows(tmp_path):
    out_dir, manifest = run_into(tmp_path, "small", seed=7, n_trials=10)
    assert manifest.rows["texting"] == 10 * 3 * 2
    lines = (out_dir / TEXTING_FILENAME).read_text().splitlines()
    assert len(lines) == 61
