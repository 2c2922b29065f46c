import pytest

import ariththeta as at
from ariththeta.greens import QuadratureSpec


@pytest.fixture(scope="session")
def lat_d1():
    return at.trace_zero_lattice(at.bundled_order("d1"))


@pytest.fixture(scope="session")
def lat_d6():
    return at.trace_zero_lattice(at.bundled_order("d6"))


@pytest.fixture(scope="session")
def lat_d10():
    return at.trace_zero_lattice(at.bundled_order("d10"))


@pytest.fixture(scope="session")
def spec():
    return QuadratureSpec()
