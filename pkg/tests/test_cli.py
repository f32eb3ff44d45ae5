import json
from pathlib import Path

import pytest

from sweeps.cli import EXIT_COMPUTE, EXIT_CONFIG, EXIT_OK, main


@pytest.fixture
def journal_dir(tmp_path):
    return str(tmp_path / "journal")


def journals(path: str, suffix: str) -> list[Path]:
    return sorted(Path(path).glob(f"run_*{suffix}"))


def test_overlap_sweep_writes_table_and_journal(tmp_path, journal_dir):
    out = tmp_path / "overlap.csv"
    code = main(["overlap-sweep", "--p", "2,3", "--out", str(out), "--journal-dir", journal_dir])
    assert code == EXIT_OK
    lines = out.read_text().splitlines()
    assert lines[-3] == "P,T,delta0,delta1,overlap_c,max_abs_disagreement"
    assert lines[-2].startswith("2,2,") and lines[-1].startswith("3,3,")

    record = json.loads(journals(journal_dir, ".json")[0].read_text())
    assert record["exit_code"] == EXIT_OK
    assert record["entries"][0]["kind"] == "command"


def test_keyrate_sweep_is_byte_deterministic(tmp_path):
    paths = [tmp_path / "a.csv", tmp_path / "b.csv"]
    for path in paths:
        args = ["keyrate-sweep", "--p", "3,5", "--n-range", "1000:100000:10", "--out", str(path), "--journal-dir", ""]
        assert main(args) == EXIT_OK
    assert paths[0].read_bytes() == paths[1].read_bytes()


def test_config_file_and_flag_override(tmp_path):
    config = tmp_path / "sweep.env"
    config.write_text("kind = keyrate\np = 3\nnoise = 0.1\nn_range = 1000:10000:10\n")
    out = tmp_path / "rates.json"
    code = main(["keyrate-sweep", "--config", str(config), "--p", "5", "--format", "json", "--out", str(out), "--journal-dir", ""])
    assert code == EXIT_OK
    payload = json.loads(out.read_text())
    assert {row[1] for row in payload["rows"]} == {5.0}
    assert payload["metadata"]["spec"]["noise"] == [0.1]


@pytest.mark.parametrize(
    "argv",
    [
        ["keyrate-sweep", "--sample-frac", "1.5"],
        ["keyrate-sweep", "--config", "/nonexistent/sweep.env"],
        ["overlap-sweep", "--kind", "overlap-dim", "--p", "1"],
        ["overlap-sweep", "--kind", "overlap-time", "--t", "1..3", "--time", "5"],
        ["teleport"],
        [],
    ],
)
def test_configuration_errors_exit_1(argv, journal_dir):
    assert main([*argv, "--journal-dir", journal_dir] if argv else argv) == EXIT_CONFIG


def test_bad_environment_setting_exits_1(monkeypatch, caplog):
    monkeypatch.setenv("QWLAB_EPSILON", "tiny")
    assert main(["walk-dump", "--p", "3", "--journal-dir", ""]) == EXIT_CONFIG
    assert "QWLAB_EPSILON" in caplog.text


def test_failed_run_is_journaled(journal_dir):
    assert main(["keyrate-sweep", "--epsilon", "2", "--journal-dir", journal_dir]) == EXIT_CONFIG
    transcript = journals(journal_dir, ".txt")[0].read_text()
    assert "Exit code: 1" in transcript


def test_computation_error_exits_2():
    assert main(["walk-dump", "--p", "1", "--journal-dir", ""]) == EXIT_COMPUTE


def test_walk_dump(tmp_path):
    out = tmp_path / "dump.json"
    assert main(["walk-dump", "--p", "3", "--time", "3", "--format", "json", "--out", str(out), "--journal-dir", ""]) == EXIT_OK
    payload = json.loads(out.read_text())
    assert payload["metadata"]["gamma"] == pytest.approx(0.625)


def test_verify_small_grid(tmp_path):
    out = tmp_path / "verdict.json"
    code = main(["verify", "--p", "2,3", "--matrix-samples", "5", "--out", str(out), "--journal-dir", ""])
    assert code == EXIT_OK
    verdict = json.loads(out.read_text())
    assert verdict["passed"] is True
    assert verdict["total_checks"] > 0
