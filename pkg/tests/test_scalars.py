import math
from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st

from coxcomm.scalars import COS_PI_OVER, ONE, ZERO, Scalar

RADICANDS = (1, 2, 3, 6, 5, 10, 15, 30)

coeffs = st.lists(st.fractions(min_value=-20, max_value=20, max_denominator=12), min_size=8, max_size=8)


def _float(c):
    return sum(float(q) * math.sqrt(d) for q, d in zip(c, RADICANDS))


def test_cosines():
    for m, c in COS_PI_OVER.items():
        assert math.isclose(float(c), math.cos(math.pi / m), abs_tol=1e-15)
    # 2cos(pi/5) is the golden ratio: x^2 = x + 1
    phi = 2 * COS_PI_OVER[5]
    assert phi * phi == phi + 1
    assert 4 * COS_PI_OVER[4] * COS_PI_OVER[4] == 2
    assert 4 * COS_PI_OVER[6] * COS_PI_OVER[6] == 3


def test_exact_zero():
    r2, r3, r5 = Scalar.sqrt(2), Scalar.sqrt(3), Scalar.sqrt(5)
    assert r2 * r3 == Scalar.sqrt(6)
    assert (r2 * r3 * r5) * (r2 * r3 * r5) == 30
    assert (r2 + r3) * (r2 - r3) == -1
    assert not (r5 * r5 - 5)
    assert (r5 * r5 - 5).sign() == 0


def test_sign_of_near_cancellation():
    # 99 - 70 sqrt 2 = 1 / (99 + 70 sqrt 2), strictly between 1/198 and 1/197
    d = 99 - Scalar.sqrt(2) * 70
    assert (d - Fraction(1, 198)).sign() == 1
    assert (d - Fraction(1, 197)).sign() == -1


def test_ordering_and_str():
    assert ZERO < ONE < Scalar.sqrt(2) < Scalar.sqrt(3)
    assert str(ZERO) == "0"
    assert Scalar.rational(Fraction(3, 4)).is_rational()
    assert not Scalar.sqrt(5).is_rational()


@given(coeffs)
def test_sign_agrees_with_floats(c):
    x = Scalar(c)
    f = _float(c)
    if abs(f) > 1e-6:
        assert x.sign() == (1 if f > 0 else -1)
    if all(q == 0 for q in c):
        assert x.sign() == 0


@given(coeffs, coeffs)
def test_product_agrees_with_floats(a, b):
    p = Scalar(a) * Scalar(b)
    assert math.isclose(float(p), _float(a) * _float(b), rel_tol=1e-9, abs_tol=1e-6)


@given(coeffs, coeffs, coeffs)
def test_ring_laws(a, b, c):
    x, y, z = Scalar(a), Scalar(b), Scalar(c)
    assert x * (y + z) == x * y + x * z
    assert (x * y) * z == x * (y * z)
    assert (x - y) + y == x
