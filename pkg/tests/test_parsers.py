"""Tests for the key=value run-config parser."""

import pytest

from hunter_profiles.errors import ConfigError
from hunter_profiles.models import RunConfig
from hunter_profiles.parsers import load_run_config, parse_run_config

SAMPLE_CONFIG = """# gamma = 1.15 run
gamma = 1.15
grid-per-decade = 60
negative = yes
tol=1e-11
verify_gammas = 1.05, 1.1
out = results/run.json
"""


def test_parse_run_config_coerces_types() -> None:
    config = parse_run_config(SAMPLE_CONFIG)

    assert config.gamma == 1.15
    assert config.grid_per_decade == 60
    assert config.negative is True
    assert config.tol == 1e-11
    assert config.verify_gammas == (1.05, 1.1)
    assert config.out == "results/run.json"
    assert config.order == RunConfig().order


def test_config_round_trips_through_text() -> None:
    config = parse_run_config(SAMPLE_CONFIG)

    assert parse_run_config(config.to_text()) == config


def test_parse_run_config_keeps_base_values() -> None:
    base = RunConfig(gamma=1.05, order=12)
    config = parse_run_config("tol = 1e-9\n", base=base)

    assert config.gamma == 1.05
    assert config.order == 12
    assert config.tol == 1e-9


@pytest.mark.parametrize(
    ("text", "message"),
    [
        ("gama = 1.1\n", "line 1: unknown key"),
        ("\n\ngamma 1.1\n", "line 3: expected key=value"),
        ("order = ten\n", "line 1: cannot parse"),
        ("negative = maybe\n", "line 1: cannot parse"),
    ],
)
def test_parse_run_config_reports_line_numbers(text: str, message: str) -> None:
    with pytest.raises(ConfigError, match=message):
        parse_run_config(text)


def test_validate_rejects_bad_values() -> None:
    with pytest.raises(ConfigError):
        RunConfig(gamma=1.0).validate()
    RunConfig(gamma=1.0).validate(allow_isothermal=True)
    with pytest.raises(ConfigError):
        RunConfig(scan_lo=0.5, scan_hi=0.1).validate()
    with pytest.raises(ConfigError):
        RunConfig(format="xml").validate()


def test_load_run_config_from_file(tmp_path) -> None:
    path = tmp_path / "run.cfg"
    path.write_text("gamma = 1.05\n", encoding="utf-8")

    assert load_run_config(path).gamma == 1.05
    with pytest.raises(ConfigError):
        load_run_config(tmp_path / "missing.cfg")
