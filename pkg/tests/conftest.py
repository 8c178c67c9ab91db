"""
Pytest configuration and fixtures
"""
import pytest
import os
import sys

# Add parent directory to path
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

# Config reads SOLVKNOT_* at import time; pin the values the tests rely on before
# anything imports src.config (load_dotenv() does not override variables already set).
os.environ['SOLVKNOT_GAMMA_PARAMS'] = '0:-1,2:1'
os.environ['SOLVKNOT_ORACLE_TRIALS'] = '50'
os.environ['SOLVKNOT_SEARCH_RADIUS'] = '3'
os.environ['SOLVKNOT_LOG_LEVEL'] = 'WARNING'

from click.testing import CliRunner  # noqa: E402

from src.services.nil_group import gamma_build  # noqa: E402
from src.services.verification import RunConfig  # noqa: E402


@pytest.fixture
def runner():
    """Click test runner"""
    return CliRunner()


@pytest.fixture(params=[(0, -1), (2, 1), (-2, 1), (2, -1)], ids=lambda p: f'gamma{p}')
def gamma_group(request):
    """Gamma(e, eta) for a spread of q values and both signs of eta"""
    return gamma_build(*request.param)


@pytest.fixture
def gamma_plus():
    """Gamma(2, 1), q = 3"""
    return gamma_build(2, 1)


@pytest.fixture
def gamma_minus():
    """Gamma(0, -1), q = -1"""
    return gamma_build(0, -1)


@pytest.fixture
def small_config():
    """A fast run configuration with one group of each sign of eta"""
    return RunConfig(gamma_params=((0, -1), (2, 1)), search_radius=3, random_seed=7,
                     output_format='json', oracle_trials=50)
