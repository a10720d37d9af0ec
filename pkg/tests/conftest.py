import pytest

from conediag.asympt import dual_form, log_hessian
from conediag.geometry import find_cone_point
from conediag.polycore import parse_polynomial

EX1_TEXT = "1 - (Z1 + Z2 + Z3) + 3/4*(Z1*Z2 + Z1*Z3 + Z2*Z3)"
EX2_TEXT = "1 - (Z1 + Z2 + Z3 + Z4) + 64/27*(Z1*Z2*Z3 + Z1*Z2*Z4 + Z1*Z3*Z4 + Z2*Z3*Z4)"


@pytest.fixture(scope="session")
def ex1():
    """Symmetric d=3 polynomial with a cone point at (2/3, 2/3, 2/3)."""
    return parse_polynomial(EX1_TEXT, ["Z1", "Z2", "Z3"])


@pytest.fixture(scope="session")
def ex2():
    """Symmetric d=4 polynomial with a cone point at (3/8, 3/8, 3/8, 3/8)."""
    return parse_polynomial(EX2_TEXT, ["Z1", "Z2", "Z3", "Z4"])


@pytest.fixture(scope="session")
def ex1_cone(ex1):
    cones = find_cone_point(ex1)
    assert len(cones) == 1
    return cones[0]


@pytest.fixture(scope="session")
def ex2_cone(ex2):
    cones = find_cone_point(ex2)
    assert len(cones) == 1
    return cones[0]


@pytest.fixture(scope="session")
def ex1_qd(ex1, ex1_cone):
    return dual_form(log_hessian(ex1, ex1_cone))


@pytest.fixture(scope="session")
def ex2_qd(ex2, ex2_cone):
    return dual_form(log_hessian(ex2, ex2_cone))
