"""Shared fixtures."""

import mpmath
import pytest
from typer.testing import CliRunner

from lamedisc.lame_core import LameParams
from lamedisc.ode_floquet import IntegrationConfig

mpmath.mp.dps = 50


@pytest.fixture
def cfg() -> IntegrationConfig:
    return IntegrationConfig()


@pytest.fixture
def worked_example() -> LameParams:
    """h = 6, nu = 1/2, tau = 5 (k = 0.993262...)."""
    return LameParams.from_tau(6.0, 0.5, 5.0)


@pytest.fixture
def runner() -> CliRunner:
    return CliRunner()
