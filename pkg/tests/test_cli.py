import asyncio
import json

import pytest

from main import EXIT_FAILED, EXIT_OK, EXIT_USAGE, build_run_config, cmd_list, main, parse_arguments, parse_checks, parse_params
from models.errors import ConfigError
from tests.test_vee_systems import roots_only
from vee_systems import catalog


def run_cli(*argv):
    return asyncio.run(main(list(argv)))


class TestList:
    def test_text(self, capsys):
        assert run_cli("list") == EXIT_OK
        out = capsys.readouterr().out
        for signature in ("- A2 (rank 2)", "- E8 (rank 8)", "- G2(h) (rank 2)", "- AN(N) (rank N)", "- BN(N) (rank N)"):
            assert signature in out

    def test_json(self, capsys):
        assert run_cli("list", "--json") == EXIT_OK
        entries = json.loads(capsys.readouterr().out)
        assert [e["name"] for e in entries][:3] == ["A1_2", "A1_4", "A2"]
        assert {e["signature"] for e in entries} >= {"A1_4(nu)", "F4(h)", "E7"}

    def test_list_matches_cmd_list(self):
        assert cmd_list(as_json=False).count("\n") == 11


class TestVerify:
    def test_vee_pass(self, capsys):
        assert run_cli("verify", "A2", "--checks", "vee") == EXIT_OK
        captured = capsys.readouterr()
        assert "- is_elliptic [A2]: PASS" in captured.out
        assert "- Resolving A2..." in captured.err

    def test_parameterized_system(self, capsys):
        code = run_cli("verify", "G2", "--param", "h=0", "--checks", "vee,wdvv", "--samples", "3")
        out = capsys.readouterr().out
        assert code == EXIT_OK, out
        assert "G2(h=0)" in out

    def test_call_syntax(self, capsys):
        assert run_cli("verify", "AN(3)", "--checks", "vee") == EXIT_OK
        assert "AN(3)" in capsys.readouterr().out

    def test_json_is_deterministic(self, capsys):
        argv = ("verify", "B2", "--checks", "vee,limits", "--samples", "3", "--json")
        run_cli(*argv)
        first = capsys.readouterr().out
        run_cli(*argv)
        second = capsys.readouterr().out
        assert first == second
        reports = json.loads(first)
        assert [r["check"] for r in reports] == ["is_elliptic", "rational_limit", "trig_II_limit"]
        assert all(r["elapsed_ms"] is None for r in reports)
        assert all(r["seed"] == 20240101 for r in reports)

    def test_timings(self, capsys):
        run_cli("verify", "A2", "--checks", "vee", "--json", "--timings")
        reports = json.loads(capsys.readouterr().out)
        assert reports[0]["elapsed_ms"] is not None

    def test_output_file(self, tmp_path, capsys):
        target = tmp_path / "report.json"
        assert run_cli("verify", "A2", "--checks", "vee", "--json", "--output", str(target)) == EXIT_OK
        assert capsys.readouterr().out == ""
        assert json.loads(target.read_text())[0]["status"] == "pass"

    def test_unwritable_output(self, tmp_path):
        target = tmp_path / "missing" / "report.json"
        assert run_cli("verify", "A2", "--checks", "vee", "--output", str(target)) == EXIT_USAGE

    def test_system_file(self, tmp_path, capsys):
        path = tmp_path / "a2.json"
        path.write_text(catalog("A2").to_document().model_dump_json())
        assert run_cli("verify", str(path), "--checks", "vee") == EXIT_OK
        assert "PASS" in capsys.readouterr().out

    def test_failing_system_file(self, tmp_path, capsys):
        path = tmp_path / "a3.json"
        path.write_text(roots_only("A", 3, 1).to_document().model_dump_json())
        assert run_cli("verify", str(path), "--checks", "vee") == EXIT_FAILED
        out = capsys.readouterr().out
        assert "FAIL" in out
        assert "quartic" in out

    @pytest.mark.parametrize("argv", [
        ("verify", "Z9"),
        ("verify", "G2", "--checks", "vee"),
        ("verify", "A2", "--checks", "bogus"),
        ("verify", "A2", "--param", "novalue"),
        ("verify", "A2", "--samples", "0"),
        ("verify", "A2", "--wdvv-tol", "-1"),
        ("verify", "AN(1)", "--checks", "vee"),
    ])
    def test_usage_errors(self, argv):
        assert run_cli(*argv) == EXIT_USAGE

    def test_unreadable_file(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{not json")
        assert run_cli("verify", str(path)) == EXIT_USAGE
        assert run_cli("verify", str(tmp_path / "absent.json")) == EXIT_USAGE


class TestConfig:
    def test_defaults(self):
        config = build_run_config(parse_arguments(["verify", "A2"]))
        assert config.checks == ["vee", "wdvv", "limits", "identities", "hurwitz"]
        assert config.wdvv_tol == 1e-9
        assert config.output_format == "text"
        assert not config.high_rank

    def test_checks_keep_their_order(self):
        assert parse_checks("hurwitz, vee", False) == ["vee", "hurwitz"]
        assert parse_checks("hurwitz", True) == ["vee", "wdvv", "limits", "identities", "hurwitz"]
        with pytest.raises(ConfigError):
            parse_checks(" , ", False)

    def test_params(self):
        assert parse_params(["h=1/2", " N = 3 "]) == {"h": "1/2", "N": "3"}
        with pytest.raises(ConfigError):
            parse_params(["=3"])

    def test_overrides(self):
        args = parse_arguments(["verify", "A2", "--json", "--seed", "7", "--max-terms", "50", "--high-rank"])
        config = build_run_config(args)
        assert (config.output_format, config.seed, config.series.max_terms, config.high_rank) == ("json", 7, 50, True)
