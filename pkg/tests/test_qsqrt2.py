import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, strategies as st

from micprep.qsqrt2 import SQRT2, ScalarQ2

mpmath.mp.prec = 200
fracs = st.fractions(min_value=-1000, max_value=1000, max_denominator=1000)


def mp_value(x: ScalarQ2):
    return mpmath.mpf(x.u.numerator) / x.u.denominator + mpmath.mpf(x.v.numerator) / x.v.denominator * mpmath.sqrt(2)


def test_sqrt2_squared():
    assert SQRT2 * SQRT2 == 2


@pytest.mark.parametrize(
    "u,v,sign",
    [(0, 0, 0), (1, 0, 1), (0, -1, -1), (Fraction(7, 5), -1, -1), (Fraction(3, 2), -1, 1), (-1, Fraction(3, 4), 1)],
)
def test_sign_cases(u, v, sign):
    assert ScalarQ2(u, v).sign() == sign


@given(fracs, fracs)
def test_sign_matches_high_precision(u, v):
    x = ScalarQ2(u, v)
    ref = mp_value(x)
    assert x.sign() == (ref > 0) - (ref < 0)


@given(fracs, fracs, fracs, fracs)
def test_ring_identities(a, b, c, d):
    x, y = ScalarQ2(a, b), ScalarQ2(c, d)
    assert (x + y) - y == x
    assert x * y == y * x
    if y != 0:
        assert (x / y) * y == x


@given(fracs, fracs)
def test_floor(u, v):
    x = ScalarQ2(u, v)
    k = math.floor(x)
    assert k <= x < k + 1
    assert k == int(mpmath.floor(mp_value(x)))


def test_rejects_floats():
    with pytest.raises(TypeError):
        ScalarQ2(0.5)


def test_json():
    x = ScalarQ2(Fraction(1, 3), -2)
    assert ScalarQ2.from_json(x.to_json()) == x
    assert ScalarQ2(5).to_json() == 5
