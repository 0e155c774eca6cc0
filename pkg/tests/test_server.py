"""Tests for the FastMCP tool functions."""

import pytest

from hunter_profiles import server
from hunter_profiles.core import derive_params


def _call(tool, **kwargs):
    return getattr(tool, "fn", tool)(**kwargs)


def test_gamma_params_tool() -> None:
    payload = _call(server.gamma_params, gamma=1.1)

    assert payload["k"] == pytest.approx(derive_params(1.1).k)
    assert payload["density_exponent"] == pytest.approx(2 / 0.9)


def test_tools_report_domain_errors() -> None:
    payload = _call(server.gamma_params, gamma=1.5)

    assert payload["error"] == "DomainError"


def test_explicit_state_tool() -> None:
    payload = _call(server.explicit_state, gamma=1.1, kind="friedman", y=1.5)

    assert payload == {"rho": pytest.approx(1 / (6 * 3.141592653589793)), "u": pytest.approx(-1.0)}
    assert "error" in _call(server.explicit_state, gamma=1.1, kind="unknown", y=1.0)


def test_sonic_point_tool() -> None:
    payload = _call(server.sonic_point, gamma=1.1, eps=0.0)

    assert payload["sonic_point"]["y_star"] == pytest.approx(derive_params(1.1).y_f)
    assert payload["resonant"] is False
