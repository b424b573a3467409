"""Tests for the console entry point."""

import json

import pytest

from pongalg.cli import main
from pongalg.config import CACHE_DIR_ENV, WORKERS_ENV


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    monkeypatch.delenv(CACHE_DIR_ENV, raising=False)
    monkeypatch.delenv(WORKERS_ENV, raising=False)


class TestMain:
    def test_pass_exits_zero(self, capsys):
        assert main(["dd-check", "--m", "3", "--k", "1"]) == 0
        data = json.loads(capsys.readouterr().out)
        assert data["passed"] is True
        assert data["request"]["m"] == 3

    def test_usage_error_exits_two(self, capsys):
        assert main(["hochschild", "--m", "3", "--k", "2"]) == 2
        assert "pongalg: error:" in capsys.readouterr().err

    def test_bad_state_exits_two(self, capsys):
        assert main(["homology", "--m", "4", "--k", "2", "--x", "1"]) == 2
        assert "not an idempotent state" in capsys.readouterr().err

    def test_unknown_command(self):
        with pytest.raises(SystemExit) as exc_info:
            main(["frobnicate"])
        assert exc_info.value.code == 2

    def test_out_file(self, tmp_path, capsys):
        out = tmp_path / "reports" / "dd.txt"
        assert main(["dd-check", "--m", "3", "--k", "1", "--format", "pretty", "--out", str(out)]) == 0
        assert out.read_text(encoding="utf-8").startswith("dd-check: PASS")
        assert capsys.readouterr().out == ""

    def test_diagram_tikz(self, tmp_path, capsys):
        tex = tmp_path / "diagram.tex"
        code = main(["diagram", "--m", "4", "--k", "2", "--generator", "m=4 k=2 ((1,-2),(2,1))", "--tikz", str(tex)])
        assert code == 0
        assert "\\begin{tikzpicture}" in tex.read_text(encoding="utf-8")
        capsys.readouterr()

    def test_cache_dir_from_env(self, tmp_path, monkeypatch, capsys):
        monkeypatch.setenv(CACHE_DIR_ENV, str(tmp_path))
        assert main(["dd-check", "--m", "3", "--k", "1"]) == 0
        assert (tmp_path / "results.sqlite3").exists()
        first = capsys.readouterr().out
        assert main(["dd-check", "--m", "3", "--k", "1"]) == 0
        assert capsys.readouterr().out == first
