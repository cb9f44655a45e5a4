import json

import pytest

from jamtexter.cli import main


def test_pipeline_writes_all_artifacts(tmp_path, capsys):
    out = tmp_path / "run"
    out.mkdir()
    assert main(["pipeline", "--seed", "42", "--out-dir", str(out)]) == 0
    names = {p.name for p in out.iterdir()}
    assert names == {"grid_results.csv", "texting_results.csv", "losses.csv", "manifest.json"}
    assert "pipeline done" in capsys.readouterr().out


def test_enumerate_prints_exact_table(capsys):
    assert main(["enumerate"]) == 0
    out = capsys.readouterr().out
    lines = [line.split() for line in out.strip().splitlines()]
    assert lines[0] == ["mode", "expected_p_ic", "delivery_probability"]
    table = {fields[0]: fields[1:] for fields in lines[1:]}
    assert table["baseline"] == ["0.0900", "0.0000"]
    assert table["partial"] == ["0.6520", "0.7400"]
    assert table["full"] == ["0.9766", "0.9974"]


def test_unknown_subcommand_exits_1(capsys):
    assert main(["frobnicate"]) == 1
    assert "usage:" in capsys.readouterr().err


def test_unknown_flag_exits_1(capsys):
    assert main(["pipeline", "--volume", "11"]) == 1
    assert "usage:" in capsys.readouterr().err


def test_missing_out_dir_parent_exits_2(tmp_path, capsys):
    assert main(["grid", "--out-dir", str(tmp_path / "no" / "deep")]) == 2
    assert "I/O error" in capsys.readouterr().err


def test_invalid_trials_exits_1(tmp_path, capsys):
    assert main(["text", "--trials", "0", "--out-dir", str(tmp_path)]) == 1
    assert "n_trials" in capsys.readouterr().err


def test_subcommand_stages(tmp_path):
    for command, filename in (
        ("grid", "grid_results.csv"),
        ("text", "texting_results.csv"),
        ("cost", "losses.csv"),
    ):
        out = tmp_path / command
        out.mkdir()
        assert main([command, "--seed", "1", "--out-dir", str(out)]) == 0
        assert (out / filename).is_file()
        assert {p.name for p in out.iterdir()} == {filename}


def test_config_file_and_flag_precedence(tmp_path):
    config_path = tmp_path / "cfg.json"
    config_path.write_text(json.dumps({"n_trials": 4, "seed": 11}))
    out = tmp_path / "out"
    out.mkdir()
    assert main(["text", "--config", str(config_path), "--out-dir", str(out)]) == 0
    lines = (out / "texting_results.csv").read_text().splitlines()
    assert len(lines) == 1 + 4 * 3 * 2


def test_seed_env_fallback_and_flag_priority(tmp_path, monkeypatch):
    out_env = tmp_path / "env"
    out_env.mkdir()
    out_flag = tmp_path / "flag"
    out_flag.mkdir()
    out_ref = tmp_path / "ref"
    out_ref.mkdir()

    monkeypatch.setenv("JAMTEXTER_SEED", "99")
    assert main(["text", "--out-dir", str(out_env)]) == 0
    # flag wins over the environment
    assert main(["text", "--seed", "123", "--out-dir", str(out_flag)]) == 0
    monkeypatch.delenv("JAMTEXTER_SEED")
    assert main(["text", "--seed", "99", "--out-dir", str(out_ref)]) == 0

    env_bytes = (out_env / "texting_results.csv").read_bytes()
    ref_bytes = (out_ref / "texting_results.csv").read_bytes()
    flag_bytes = (out_flag / "texting_results.csv").read_bytes()
    assert env_bytes == ref_bytes
    assert flag_bytes != env_bytes


def test_bad_env_seed_exits_1(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("JAMTEXTER_SEED", "not-a-number")
    assert main(["text", "--out-dir", str(tmp_path)]) == 1
    assert "JAMTEXTER_SEED" in capsys.readouterr().err


def test_broken_config_exits_1(tmp_path, capsys):
    config_path = tmp_path / "broken.json"
    config_path.write_text("{oops")
    assert main(["enumerate", "--config", str(config_path)]) == 1
    assert "parse error" in capsys.readouterr().err


def test_missing_config_file_exits_2(tmp_path, capsys):
    assert main(["enumerate", "--config", str(tmp_path / "absent.json")]) == 2
    assert "I/O error" in capsys.readouterr().err
