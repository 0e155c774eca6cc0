"""Tests for the hunter-profiles command-line interface."""

import json

import pytest

from hunter_profiles import cli
from hunter_profiles.analysis.sonic import BranchLost
from hunter_profiles.core import derive_params
from hunter_profiles.services.acceptance import AcceptanceReport, CheckResult


def _run(capsys: pytest.CaptureFixture[str], *argv: str) -> tuple[int, str, str]:
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_params_prints_constants_and_identities(capsys) -> None:
    code, out, _ = _run(capsys, "params", "--gamma", "1.1")
    payload = json.loads(out)

    assert code == cli.EXIT_OK
    assert payload["k"] == pytest.approx(derive_params(1.1).k)
    assert all(abs(value) < 1e-12 for value in payload["identities"].values())
    assert 0.5 < payload["friedman_sonic_point"] < 5.0
    assert payload["schema_version"] == 1


def test_params_accepts_isothermal_endpoint(capsys) -> None:
    code, out, _ = _run(capsys, "params", "--gamma", "1.0")

    assert code == cli.EXIT_OK
    assert json.loads(out)["nu"] == pytest.approx(7**0.5 / 2)


def test_sonic_at_zero_eps(capsys) -> None:
    code, out, _ = _run(capsys, "sonic", "--gamma", "1.1", "--eps", "0")
    payload = json.loads(out)

    assert code == cli.EXIT_OK
    assert payload["sonic_point"]["y_star"] == pytest.approx(derive_params(1.1).y_f, rel=1e-12)
    assert abs(payload["normal_form"]["quadratic_residual"]) < 1e-10
    assert payload["normal_form"]["resonant"] is False


def test_invalid_gamma_exits_with_input_error(capsys) -> None:
    code, _, err = _run(capsys, "sonic", "--gamma", "1.3")

    assert code == cli.EXIT_INVALID_INPUT
    assert "gamma" in err


def test_flags_override_config_file(tmp_path, capsys) -> None:
    config = tmp_path / "run.cfg"
    config.write_text("gamma = 1.05\norder = 12\n", encoding="utf-8")
    code, out, _ = _run(capsys, "params", "--config", str(config), "--gamma", "1.15")

    assert code == cli.EXIT_OK
    assert json.loads(out)["gamma"] == 1.15
    args = cli.build_parser().parse_args(["sonic", "--config", str(config)])
    resolved = cli.resolve_config(args)
    assert (resolved.gamma, resolved.order) == (1.05, 12)


def test_shooting_flags_reach_the_config() -> None:
    args = cli.build_parser().parse_args(["shoot", "--core-depth", "1e-4", "--tol-sonic", "1e-8", "--ymin", "1e-40"])
    resolved = cli.resolve_config(args)

    assert (resolved.core_depth, resolved.tol_sonic, resolved.ymin_factor) == (1e-4, 1e-8, 1e-40)


def test_shoot_payload_lists_failed_roots() -> None:
    payload = cli.solutions_payload(derive_params(1.1), [], [(0.01, "TrustRegionExceeded: outside")])

    assert payload["solutions"] == []
    assert payload["failed_roots"] == [{"eps": 0.01, "error": "TrustRegionExceeded: outside"}]


def test_malformed_config_is_an_input_error(tmp_path, capsys) -> None:
    config = tmp_path / "bad.cfg"
    config.write_text("gamma: 1.1\n", encoding="utf-8")
    code, _, err = _run(capsys, "params", "--config", str(config))

    assert code == cli.EXIT_INVALID_INPUT
    assert "line 1" in err


def test_numerical_failure_exit_code(monkeypatch, capsys) -> None:
    def lost(params, eps):
        raise BranchLost("no real root")

    monkeypatch.setattr(cli, "solve_sonic", lost)
    code, _, err = _run(capsys, "sonic", "--eps", "0.5")

    assert code == cli.EXIT_NUMERICAL
    assert "BranchLost" in err


def test_unwritable_output_exit_code(tmp_path, capsys) -> None:
    blocker = tmp_path / "file"
    blocker.write_text("", encoding="utf-8")
    code, _, _ = _run(capsys, "params", "--out", str(blocker / "out.json"))

    assert code == cli.EXIT_OUTPUT


def test_linear_csv_output(tmp_path, capsys) -> None:
    target = tmp_path / "linear.csv"
    code, _, _ = _run(capsys, "linear", "--gamma", "1.1", "--format", "csv", "--out", str(target))
    lines = target.read_text(encoding="utf-8").splitlines()

    assert code == cli.EXIT_OK
    assert lines[0] == "z,p_hom,w_hom"
    zs = [float(line.split(",")[0]) for line in lines[1:]]
    assert zs == sorted(zs)


def test_verify_reports_failures(monkeypatch, capsys) -> None:
    class FakeSuite:
        def __init__(self, config, *, include_shooting, debug_logger) -> None:
            self.include_shooting = include_shooting

        def run(self) -> AcceptanceReport:
            report = AcceptanceReport(gammas=[1.1])
            report.checks.append(CheckResult("sonic_R", 1.1, 0.0, 1.0, 1e-10, False))
            return report

    monkeypatch.setattr(cli, "AcceptanceSuite", FakeSuite)
    code, out, err = _run(capsys, "verify", "--skip-shooting")

    assert code == cli.EXIT_VERIFY_FAILED
    assert json.loads(out)["passed"] is False
    assert "FAILED sonic_R" in err


def test_debug_flag_writes_to_stderr(capsys) -> None:
    code, _, err = _run(capsys, "params", "--debug")

    assert code == cli.EXIT_OK
    assert err.startswith("[debug] ")


def test_missing_command_is_a_usage_error() -> None:
    with pytest.raises(SystemExit) as info:
        cli.main([])
    assert info.value.code == 2
