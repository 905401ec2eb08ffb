"""
Shared fixtures for the rtz test suite
"""
from fractions import Fraction

import pytest
from click.testing import CliRunner

from rtz.reports import load_schema
from rtz.services.polycore import DensePoly

F = Fraction


def poly(*coeffs):
    """DensePoly from coefficients, lowest degree first"""
    return DensePoly(coeffs)


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture(scope='session')
def report_schema():
    return load_schema()


@pytest.fixture
def z():
    return DensePoly((0, 1))
