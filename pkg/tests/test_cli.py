import json
import subprocess
import sys

import pytest

from attn_peaks.cli import main
from support import write_small_corpus


class TestExitCodes:
    def test_successful_run_returns_zero(self, tmp_path, capsys):
        config = write_small_corpus(tmp_path)
        out = tmp_path / "out"
        assert main(["run", "--config", str(config), "--out-dir", str(out)]) == 0
        assert (out / "manifest.json").is_file()

    def test_missing_documents_file_exits_two(self, tmp_path, capsys):
        code = main(["run", "--documents", str(tmp_path / "nope.csv")])
        assert code == 2
        assert "nope.csv" in capsys.readouterr().err

    def test_missing_registry_path_exits_two_and_names_it(self, tmp_path, capsys):
        config = write_small_corpus(tmp_path, with_registries=False)
        code = main(
            ["align", "--config", str(config), "--emdat", str(tmp_path / "gone.csv")]
        )
        assert code == 2
        assert "gone.csv" in capsys.readouterr().err

    def test_unconfigured_run_exits_two(self, capsys):
        assert main(["run"]) == 2
        assert "documents" in capsys.readouterr().err

    def test_unknown_flag_exits_two(self):
        with pytest.raises(SystemExit) as exc:
            main(["run", "--bogus"])
        assert exc.value.code == 2

    def test_stage_tagged_error_message(self, tmp_path, capsys):
        config = write_small_corpus(tmp_path)
        (tmp_path / "emdat.csv").write_text(
            "record_id,source,raw_type,onset_date,location,status\n"
            "EM-1,EMDAT,Volcanic activity,2020-01-09,,\n",
            encoding="utf-8",
        )
        code = main(["run", "--config", str(config), "--out-dir", str(tmp_path / "o")])
        assert code == 2
        assert "align:" in capsys.readouterr().err


class TestFlagOverrides:
    def test_flags_override_config_keys(self, tmp_path):
        config = write_small_corpus(tmp_path)
        out = tmp_path / "strict"
        # min-height 4 suppresses both planted events (peaks are 3 and 2)
        code = main(
            [
                "detect",
                "--config",
                str(config),
                "--min-height",
                "4",
                "--out-dir",
                str(out),
            ]
        )
        assert code == 0
        assert (out / "events.jsonl").read_text() == ""

    def test_hazard_flag_narrows_processing(self, tmp_path):
        config = write_small_corpus(tmp_path)
        out = tmp_path / "fire-only"
        code = main(
            ["detect", "--config", str(config), "--hazard", "fire", "--out-dir", str(out)]
        )
        assert code == 0
        assert not (out / "timeseries_landslide.csv").exists()
        events = [json.loads(l) for l in (out / "events.jsonl").read_text().splitlines()]
        assert [e["hazard"] for e in events] == ["fire"]

    def test_window_days_flag(self, tmp_path):
        config = write_small_corpus(tmp_path)
        out = tmp_path / "w0"
        # lag of the planted pair is 1, so a zero window drops it
        code = main(
            ["align", "--config", str(config), "--window-days", "0", "--out-dir", str(out)]
        )
        assert code == 0
        alignment = json.loads((out / "alignment.json").read_text())
        assert alignment["pairs"] == []

    def test_cli_without_config_file(self, tmp_path):
        write_small_corpus(tmp_path)
        out = tmp_path / "flags-only"
        code = main(
            [
                "detect",
                "--documents",
                str(tmp_path / "documents.csv"),
                "--start",
                "2020-01-01",
                "--end",
                "2020-12-31",
                "--out-dir",
                str(out),
            ]
        )
        assert code == 0
        assert (out / "events.jsonl").is_file()


def test_module_entry_point_smoke(tmp_path):
    config = write_small_corpus(tmp_path)
    out = tmp_path / "out"
    proc = subprocess.run(
        [
            sys.executable,
            "-m",
            "attn_peaks",
            "run",
            "--config",
            str(config),
            "--out-dir",
            str(out),
        ],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0, proc.stderr
    assert (out / "report.json").is_file()
