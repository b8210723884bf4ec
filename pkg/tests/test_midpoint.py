from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from micprep.midpoint import (
    REFUTED,
    VERIFIED,
    Annulus,
    BudgetExhausted,
    HyperbolaMixed,
    MidpointCertificate,
    NoPairGuaranteed,
    ParabolaPWL,
    Primes,
    RankLeOne,
    UserGrid,
    annulus_family,
    inner_circle_points,
    is_prime,
    named_stream,
    oracle_from_json,
    parabola_family,
    rank_one_family,
    same_parity_pair,
    search_certificate,
    verify_certificate,
)
from oracles import rank2x2, sieve


def test_is_prime_matches_sieve():
    flags = sieve(5000)
    assert [n for n in range(5001) if is_prime(n)] == [n for n in range(5001) if flags[n]]


def test_rank_one_family():
    c = verify_certificate(rank_one_family(21))
    assert c.status == VERIFIED
    # independent check of each midpoint's rank
    for i, p in enumerate(c.points):
        assert rank2x2([p[0:2], p[2:4]]) == 1
        for q in c.points[i + 1 :]:
            mid = [(a + b) / 2 for a, b in zip(p, q)]
            assert rank2x2([mid[0:2], mid[2:4]]) == 2


def test_rank_oracle_wider_matrices():
    o = RankLeOne(2, 3)
    assert o.contains([1, 2, 3, 2, 4, 6])
    assert not o.contains([1, 0, 0, 0, 0, 1])
    assert o.contains([0] * 6)


def test_primes_pair():
    c = verify_certificate(MidpointCertificate(Primes(), ((F(3),), (F(5),))))
    assert c.status == VERIFIED


def test_primes_refuted():
    c = verify_certificate(MidpointCertificate(Primes(), ((F(3),), (F(11),))))
    assert c.status == REFUTED and c.refutation.reason == "member_midpoint" and c.refutation.indices == (0, 1)
    c = verify_certificate(MidpointCertificate(Primes(), ((F(3),), (F(9),))))
    assert c.refutation.reason == "non_member" and c.refutation.indices == (1,)
    c = verify_certificate(MidpointCertificate(Primes(), ((F(3),), (F(3),))))
    assert c.refutation.reason == "duplicate"


def test_annulus_family():
    pts = inner_circle_points(F(3, 2), 12)
    assert len(set(pts)) == 12
    assert all(x * x + y * y == F(9, 4) for x, y in pts)
    assert verify_certificate(annulus_family(F(3, 2), 2, 12)).status == VERIFIED


def test_annulus_contains():
    a = Annulus(F(3, 2), F(2))
    assert a.contains((F(3, 2), 0)) and a.contains((0, F(2)))
    assert not a.contains((0, 0)) and not a.contains((F(2), F(1, 100)))


def test_parabola_even_family():
    assert verify_certificate(parabola_family(range(0, 20, 2))).status == VERIFIED
    assert verify_certificate(parabola_family(range(-10, 11, 2))).status == VERIFIED


def test_parabola_adjacent_refuted():
    c = verify_certificate(parabola_family([0, 1]))
    assert c.status == REFUTED and c.refutation.reason == "member_midpoint"


@settings(max_examples=100, deadline=None)
@given(st.integers(-30, 30), st.integers(-30, 30))
def test_parabola_midpoints(j, k):
    # the chord of y = x^2 between integers j, k lies above the interpolant unless |j - k| = 1
    if j == k:
        return
    o = ParabolaPWL()
    mid = (F(j + k, 2), F(j * j + k * k, 2))
    assert o.contains(mid) == (abs(j - k) == 1)


def test_search_primes():
    c = search_certificate(Primes(), named_stream("primes"), 8, 10**6)
    assert c.status == VERIFIED and len(c.points) == 8
    assert c.points[:2] == ((F(3),), (F(5),))
    assert verify_certificate(MidpointCertificate(Primes(), c.points)).status == VERIFIED


def test_search_is_deterministic():
    a = search_certificate(Primes(), named_stream("primes"), 6, 10**5)
    b = search_certificate(Primes(), named_stream("primes"), 6, 10**5)
    assert a == b
    with pytest.raises(BudgetExhausted) as e1:
        search_certificate(HyperbolaMixed(), named_stream("lattice", seed=3), 8, 200)
    with pytest.raises(BudgetExhausted) as e2:
        search_certificate(HyperbolaMixed(), named_stream("lattice", seed=3), 8, 200)
    assert e1.value.best == e2.value.best and e1.value.tests == 200


def test_search_hyperbola_stalls():
    with pytest.raises(BudgetExhausted) as err:
        search_certificate(HyperbolaMixed(), named_stream("lattice"), 8, 5000)
    assert len(err.value.best.points) < 8
    assert err.value.best.status == VERIFIED


def test_search_full_grid():
    grid = UserGrid(((F(0),), (F(1),), (F(2),)))
    with pytest.raises(BudgetExhausted) as err:
        search_certificate(grid, named_stream("naturals"), 3, 50)
    assert len(err.value.best.points) == 2


def test_search_budget_counts_calls():
    with pytest.raises(BudgetExhausted) as err:
        search_certificate(Primes(), named_stream("primes"), 50, 10)
    assert err.value.tests == 10


def test_search_rejects_small_target():
    with pytest.raises(ValueError):
        search_certificate(Primes(), named_stream("primes"), 1, 10)


@settings(max_examples=30, deadline=None)
@given(st.randoms(use_true_random=False))
def test_verification_is_permutation_invariant(rng):
    c = verify_certificate(annulus_family(F(3, 2), 2, 8))
    pts = list(c.points)
    rng.shuffle(pts)
    assert verify_certificate(MidpointCertificate(c.oracle, tuple(pts))).status == VERIFIED


def test_json_round_trip():
    for oracle in [RankLeOne(2, 2), Annulus(F(3, 2), 2), Primes(), ParabolaPWL(), HyperbolaMixed(), UserGrid(((F(1), F(1, 2)),))]:
        assert oracle_from_json(oracle.to_json()) == oracle
    c = verify_certificate(annulus_family(F(3, 2), 2, 4))
    back = MidpointCertificate.from_json(c.to_json())
    assert verify_certificate(back) == c


def test_parity_examples():
    vecs = [(0, 0), (0, 1), (1, 0), (1, 1), (2, 2)]
    assert same_parity_pair(vecs) == (0, 4)
    assert same_parity_pair([(1,), (3,)]) == (0, 1)


def test_parity_no_pair():
    with pytest.raises(NoPairGuaranteed):
        same_parity_pair([(0, 0), (0, 1), (1, 0), (1, 1)])


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 6).flatmap(lambda d: st.lists(st.lists(st.integers(-100, 100), min_size=d, max_size=d), min_size=2**d + 1, max_size=2**d + 1)))
def test_parity_always_found(vecs):
    i, j = same_parity_pair(vecs)
    assert i != j
    assert all((a + b) % 2 == 0 for a, b in zip(vecs[i], vecs[j]))
