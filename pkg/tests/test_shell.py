"""Tests for requests, the command table, the runner and the shell."""

import dataclasses
import json

import pytest

from pongalg.config import Settings
from pongalg.reports import Report
from pongalg.shell import (
    COMMANDS,
    HELP,
    VerificationRequest,
    VerificationShell,
    build_parser,
    cache_request,
    request_from_args,
    run,
    settings_from_args,
)


class TestVerificationRequest:
    def test_defaults(self):
        req = VerificationRequest("atoms")
        assert (req.m, req.k, req.weight_cap) == (3, 1, 2)
        assert req.weight is None

    @pytest.mark.parametrize(
        "kwargs,match",
        [
            ({"command": "frobnicate"}, "unknown command"),
            ({"command": "atoms", "m": 1}, "at least 2"),
            ({"command": "atoms", "m": 3, "k": 3}, "k must lie in"),
            ({"command": "atoms", "weight_cap": 0}, "weight cap"),
            ({"command": "mu", "arity_cap": 1}, "arity cap"),
            ({"command": "homology", "algebra": "free"}, "algebra"),
            ({"command": "atoms", "format": "xml"}, "format"),
            ({"command": "homology", "m": 4, "k": 2, "x": (1,)}, "not an idempotent state"),
            ({"command": "homology", "m": 4, "k": 1, "y": (4,)}, "not an idempotent state"),
            ({"command": "homology", "m": 4, "w": ("1", "1")}, "--w needs"),
        ],
    )
    def test_validation(self, kwargs, match):
        with pytest.raises(ValueError, match=match):
            VerificationRequest(**kwargs)

    def test_weight(self):
        req = VerificationRequest("homology", m=4, k=2, w=("1", "1", "1/2", "0"))
        assert req.weight.doubled == (2, 2, 1, 0)

    def test_as_dict_drops_presentation(self):
        data = VerificationRequest("homology", m=4, k=2, x=(1, 3), format="pretty", workers=4).as_dict()
        assert "format" not in data
        assert "workers" not in data
        assert "use_cache" not in data
        assert data["x"] == [1, 3]

    def test_cache_request_includes_settings(self, settings):
        data = cache_request(VerificationRequest("koszul"), settings.replace(phi_order="forward"))
        assert data["phi_order"] == "forward"
        assert data["window_multiplier"] == 1


class TestParser:
    def test_round_trip(self):
        args = build_parser().parse_args(
            ["homology", "--m", "4", "--k", "2", "--x", "3,1", "--w", "1,1,1/2,0", "--no-cache"]
        )
        req = request_from_args(args)
        assert req.x == (1, 3)
        assert req.w == ("1", "1", "1/2", "0")
        assert not req.use_cache

    def test_settings_overrides(self, settings):
        args = build_parser().parse_args(["koszul", "--phi-order", "forward", "--window-multiplier", "2"])
        s = settings_from_args(args, settings)
        assert s.phi_order == "forward"
        assert s.window_multiplier == 2

    def test_settings_untouched(self, settings):
        args = build_parser().parse_args(["koszul"])
        assert settings_from_args(args, settings) is settings

    def test_every_command_is_a_choice(self):
        choices = build_parser()._actions[1].choices
        assert sorted(choices) == sorted(COMMANDS)


class TestRun:
    def test_dd_check_passes(self, settings):
        report = run(VerificationRequest("dd-check", m=3, k=1), settings)
        assert report.passed
        assert report.checks == {"dd-relation": True, "product-trichotomy": True}
        assert [row["x"] for row in report.tables["delta1"]] == [[1], [2]]

    def test_koszul_reports_each_order(self, settings):
        report = run(VerificationRequest("koszul", m=3, k=1), settings)
        assert report.passed
        chain_maps = {row["order"]: row["chain_map"] for row in report.tables["phi_orders"]}
        assert chain_maps == {"reversed": True, "forward": False}

    def test_dd_check_passes_with_two_strands(self, settings):
        report = run(VerificationRequest("dd-check", m=4, k=2), settings)
        assert report.passed
        assert report.checks["product-trichotomy"]

    def test_cache_hit_gives_same_bytes(self, settings, cache):
        req = VerificationRequest("dd-check", m=3, k=1)
        first = run(req, settings, cache)
        assert cache.misses == 1
        second = run(req, settings, cache)
        assert cache.hits == 1
        assert second.to_json() == first.to_json()
        fresh = run(dataclasses.replace(req, use_cache=False), settings, cache)
        assert fresh.to_json() == first.to_json()
        assert len(cache) == 1

    def test_workers_do_not_change_key(self, settings):
        a = run(VerificationRequest("degenerate", m=3, k=2, weight_cap=1), settings)
        b = run(VerificationRequest("degenerate", m=3, k=2, weight_cap=1, workers=2), settings)
        assert a.request_hash == b.request_hash

    @pytest.mark.parametrize(
        "req,match",
        [
            (VerificationRequest("hochschild", m=3, k=2), "0 < k < m - 1"),
            (VerificationRequest("dd-check", m=3, k=0), "0 < k < m"),
            (VerificationRequest("qm-special", m=4, k=2), "k = m - 1"),
            (VerificationRequest("diagram"), "--generator"),
            (VerificationRequest("mu", algebra="bordered"), "pong algebra or its quotient"),
        ],
    )
    def test_command_requirements(self, settings, req, match):
        with pytest.raises(ValueError, match=match):
            run(req, settings)

    def test_homology_rows(self, settings):
        req = VerificationRequest("homology", m=3, k=1, x=(1,), y=(1,), w=("1", "1", "1"))
        report = run(req, settings)
        assert report.checks == {"square-zero": True}
        assert all(row["tag"] == "P" for row in report.tables["homology"])

    def test_diagram(self, settings):
        report = run(VerificationRequest("diagram", m=4, k=2, generator="m=4 k=2 ((1,-2),(2,1))"), settings)
        row = report.tables["diagram"][0]
        assert row["cross"] == 2
        assert row["weight"] == ["1", "1", "1/2", "0"]
        assert "tikzpicture" in row["tikz"]

    def test_mu_default_inputs(self, settings):
        report = run(VerificationRequest("mu", m=3, k=1, arity_cap=4), settings)
        assert report.checks["omega"]
        assert report.tables["mu"][0]["output"] == "Omega"
        assert report.tables["mu"][0]["arity"] == 4


class TestShell:
    @pytest.fixture
    def shell(self, cache):
        return VerificationShell(Settings(), cache)

    def test_help(self, shell):
        assert shell.execute("help") == HELP

    def test_pretty_output(self, shell):
        out, code = shell.execute_with_status("dd-check --m 3 --k 1 --format pretty")
        assert code == 0
        assert out.startswith("dd-check: PASS")

    def test_json_output(self, shell):
        out = shell.execute("dd-check --m 3 --k 1")
        assert Report.from_json(out).passed
        assert json.loads(out)["command"] == "dd-check"

    def test_and_skips_after_failure(self, shell):
        out, code = shell.execute_with_status("hochschild --m 3 --k 2 && help")
        assert code == 1
        assert "0 < k < m - 1" in out

    def test_or_runs_after_failure(self, shell):
        out, code = shell.execute_with_status("hochschild --m 3 --k 2 || help")
        assert code == 0
        assert out == HELP

    def test_sequence(self, shell):
        out, code = shell.execute_with_status("help ; dd-check --m 3 --k 1 --format pretty")
        assert code == 0
        assert out.startswith("dd-check")

    def test_usage_error(self, shell):
        out, code = shell.execute_with_status("dd-check --m")
        assert code == 1
        assert out

    def test_tokenize(self):
        assert VerificationShell._tokenize("a --x 1,3 && b || c ; d") == [
            "a", "--x", "1,3", "&&", "b", "||", "c", ";", "d",
        ]

    def test_quoted_inputs(self):
        tokens = VerificationShell._tokenize('mu --inputs "v1, L2, v3, R2"')
        assert tokens == ["mu", "--inputs", "v1, L2, v3, R2"]
