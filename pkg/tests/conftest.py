"""
Shared fixtures for the etale-modules test suite
"""

import sys
from pathlib import Path

# Add the project root to Python path
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

import pytest

from src.algebra.exactmat import Mat
from src.services.verification_service import VerificationService
from src.utils.report_formatter import ReportFormatter

REPORT_KEYS = {
    "description", "dim_g", "dim_v", "point", "rank_beta", "det_nonzero",
    "verdict", "stabilizer_dim", "stabilizer_basis", "citations",
}


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: exact computations on the largest family members")


@pytest.fixture
def service():
    return VerificationService()


@pytest.fixture
def formatter():
    return ReportFormatter()


@pytest.fixture
def J2():
    """Gram matrix of sp(1)."""
    return Mat.from_rows([[0, 1], [-1, 0]])
