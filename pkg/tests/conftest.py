import pytest

from quadratic_twist_series.curve import make_curve


@pytest.fixture(scope="session")
def congruent_curve():
    """y^2 = x^3 - x, whose twists D y^2 = x^3 - x carry the congruent numbers"""
    return make_curve(0, -1, 0)


@pytest.fixture(scope="session")
def cube_curve():
    """y^2 = x^3 - 2"""
    return make_curve(0, 0, -2)


@pytest.fixture(params=["congruent", "cube"])
def either_curve(request, congruent_curve, cube_curve):
    return congruent_curve if request.param == "congruent" else cube_curve
