"""Shared fixtures: the 3*pi reference well used across the suite."""

import pytest

import morsekit as mk


@pytest.fixture(scope="session")
def p3pi():
    return mk.decompose(mk.pi_multiple_text(3.0), "irrational")


@pytest.fixture(scope="session")
def spectrum_3pi(p3pi):
    return mk.order_spectrum(p3pi)


@pytest.fixture(scope="session")
def basis_3pi(p3pi):
    return mk.MorseBasis(p3pi)


@pytest.fixture(scope="session")
def mu_3pi(spectrum_3pi):
    return mk.build_mu_basis(spectrum_3pi)


@pytest.fixture(scope="session")
def ladder_3pi(spectrum_3pi):
    return mk.ladder_f(spectrum_3pi)
