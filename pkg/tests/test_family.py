import itertools
from fractions import Fraction as F

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from micprep.family import (
    BeattyGapSet,
    ConvergentSample,
    IntervalFamily,
    RationalPolyhedron,
    ap_escape_scan,
    beatty_member,
    check_closed_sampled,
    check_convex_family,
    hyperbola_family,
    integer_recession_direction,
    k_epsilon_outer,
    k_epsilon_recession_violations,
)

LAMBDAS = [F(0), F(1, 4), F(1, 2), F(3, 4), F(1)]


def test_hyperbola_family_is_convex():
    res = check_convex_family(hyperbola_family(50), LAMBDAS)
    assert res.ok and res.violation is None
    assert res.skipped > 0


def test_perturbation_detected():
    fam = hyperbola_family(50)
    fam = fam.with_lower(10, (F(1, 9) + F(1, 11)) / 2 + F(1, 1000))
    res = check_convex_family(fam, LAMBDAS)
    assert not res.ok
    z, w, lam, side = res.violation
    assert (z, w, lam, side) == ((F(9),), (F(11),), F(1, 2), "lower")


def test_constant_family():
    fam = IntervalFamily.from_functions(range(10), lambda z: 0, lambda z: 1)
    assert check_convex_family(fam, LAMBDAS).ok


def test_concave_upper_violation():
    # g(z) = z^2 is not concave
    fam = IntervalFamily.from_functions(range(5), lambda z: -100, lambda z: F(z * z))
    res = check_convex_family(fam, [F(1, 2)])
    assert not res.ok and res.violation[3] == "upper"


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 5), st.integers(-5, 5), st.integers(-5, 5))
def test_convex_concave_pairs_pass(a, b, c):
    # a z^2 + b z convex, -a z^2 + c z + 100 concave
    fam = IntervalFamily.from_functions(
        range(-6, 7),
        lambda z: F(a * z * z + b * z),
        lambda z: F(-a * z * z + c * z + 1000),
    )
    assert check_convex_family(fam, LAMBDAS).ok


def test_empty_slice_rejected():
    with pytest.raises(ValueError):
        IntervalFamily.from_functions([0], lambda z: 2, lambda z: 1)


def test_family_json():
    fam = hyperbola_family(5)
    assert IntervalFamily.from_json(fam.to_json()) == fam
    assert fam.to_json()["upper"] == ["inf"] * 5
    assert fam.to_json()["lower"][1] == "1/2"


def test_closed_constant_sequence():
    fam = hyperbola_family(10)
    s = ConvergentSample.make([5] * 10, [F(1, 5) + F(1, m) for m in range(1, 11)], 5, F(1, 5))
    assert check_closed_sampled(fam, [s]).ok


def test_closed_discontinuity():
    dom = [F(0)] + [F(1, m) for m in range(1, 20)]
    fam = IntervalFamily.from_functions(dom, lambda z: 0, lambda z: F(1, 2) if z == 0 else 1)
    s = ConvergentSample.make([F(1, m) for m in range(1, 20)], [1] * 19, 0, 1)
    res = check_closed_sampled(fam, [s])
    assert not res.ok and res.violation == (0, (F(0),), F(1))


def test_closed_hyperbola_approach():
    z = 3
    dom = [F(z)] + [z + F(1, m) for m in range(1, 30)]
    fam = IntervalFamily.from_functions(dom, lambda t: 1 / t, lambda t: None)
    s = ConvergentSample.make([z + F(1, m) for m in range(1, 30)], [1 / (z + F(1, m)) for m in range(1, 30)], z, F(1, z))
    assert check_closed_sampled(fam, [s]).ok


def test_recession_quadrant():
    p = RationalPolyhedron.make([[-1, 0], [0, -1]], [0, 0])
    r = integer_recession_direction(p)
    assert r is not None and any(r)
    assert all(sum(a * c for a, c in zip(row, r)) <= 0 for row in p.A)


def test_recession_triangle():
    p = RationalPolyhedron.make([[-1, 0], [0, -1], [1, 1]], [0, 0, 1])
    assert integer_recession_direction(p) is None


def test_recession_line():
    p = RationalPolyhedron.make([[1, -2], [-1, 2]], [1, 1])
    r = integer_recession_direction(p)
    assert r in {(2, 1), (-2, -1)}


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(st.integers(-4, 4), min_size=3, max_size=3), min_size=1, max_size=5))
def test_recession_direction_is_valid(rows):
    p = RationalPolyhedron.make(rows, [1] * len(rows))
    r = integer_recession_direction(p)
    # brute force: is there a nonzero small integer direction?
    box = [v for v in itertools.product(range(-6, 7), repeat=3) if any(v)]
    feasible = [v for v in box if all(sum(a * c for a, c in zip(row, v)) <= 0 for row in rows)]
    if r is None:
        assert not feasible
    else:
        assert any(r) and all(isinstance(c, int) for c in r)
        assert all(sum(a * c for a, c in zip(row, r)) <= 0 for row in rows)


def test_k_epsilon_outer_directions_leave_k_eps():
    for lo, hi in [(F(7, 5), F(3, 2)), (F(141, 100), F(142, 100)), (F(1393, 985), F(577, 408))]:
        p = k_epsilon_outer(F(2, 5), lo, hi)
        r = integer_recession_direction(p)
        assert r is not None
        assert all(sum(a * c for a, c in zip(row, r)) <= 0 for row in p.A)
        assert k_epsilon_recession_violations(r)


@settings(max_examples=100, deadline=None)
@given(st.integers(-50, 50), st.integers(-50, 50))
def test_no_integer_direction_survives(a, b):
    if a == b == 0:
        return
    assert k_epsilon_recession_violations((a, b))


def test_beatty_examples():
    s = BeattyGapSet(F(2, 5))
    assert beatty_member(s, 0) is True
    assert beatty_member(s, 1) is False
    assert beatty_member(s, 5) is True


def test_beatty_epsilon_range():
    with pytest.raises(ValueError):
        BeattyGapSet(F(0))
    with pytest.raises(ValueError):
        BeattyGapSet(F(1, 2))


def test_beatty_matches_high_precision():
    mpmath.mp.prec = 200
    s = BeattyGapSet(F(2, 5))
    r2 = mpmath.sqrt(2)
    lo = mpmath.mpf(2) / 5
    hi = 1 - r2 * lo
    for x in range(100001):
        v = r2 * x
        fr = v - mpmath.floor(v)
        assert beatty_member(s, x) == (not (lo < fr < hi)), x


def test_escape_examples():
    s = BeattyGapSet(F(2, 5))
    assert ap_escape_scan(s, 1, 1, 100) == 0
    k = ap_escape_scan(s, 2, 0, 2000)
    assert k == 15
    assert not beatty_member(s, 30)
    assert all(beatty_member(s, 2 * j) for j in range(15))


def test_escape_not_found_reports_none():
    s = BeattyGapSet(F(2, 5))
    assert ap_escape_scan(s, 2, 0, 5) is None
