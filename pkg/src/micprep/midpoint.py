"""Strong-nonconvexity certificates.

A certificate is a finite family of distinct members of a set such that no
pairwise midpoint is a member.  Any infinite such family rules out a
mixed-integer convex formulation: two of the integer assignments behind the
family share a parity pattern, and their average would put the midpoint in
the set.  Each built-in generator below extends to arbitrary size.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .qsqrt2 import as_fraction, fraction_to_json

Point = tuple[Fraction, ...]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    return all(n % d for d in range(3, math.isqrt(n) + 1, 2))


def primes_from(start: int) -> Iterator[int]:
    n = max(start, 2)
    while True:
        if is_prime(n):
            yield n
        n += 1


# --- oracles ---------------------------------------------------------------


@dataclass(frozen=True)
class RankLeOne:
    """Real ``rows x cols`` matrices of rank at most one, flattened row-major."""

    rows: int
    cols: int

    def contains(self, p: Point) -> bool:
        if len(p) != self.rows * self.cols:
            return False
        m = [p[i * self.cols : (i + 1) * self.cols] for i in range(self.rows)]
        for i, k in itertools.combinations(range(self.rows), 2):
            for j, l in itertools.combinations(range(self.cols), 2):
                if m[i][j] * m[k][l] != m[i][l] * m[k][j]:
                    return False
        return True

    def to_json(self) -> dict:
        return {"kind": "RankLeOne", "rows": self.rows, "cols": self.cols}


@dataclass(frozen=True)
class Annulus:
    """Closed planar annulus ``r_in <= ||p|| <= r_out``."""

    r_in: Fraction
    r_out: Fraction

    def contains(self, p: Point) -> bool:
        if len(p) != 2:
            return False
        sq = p[0] * p[0] + p[1] * p[1]
        return self.r_in**2 <= sq <= self.r_out**2

    def to_json(self) -> dict:
        return {"kind": "Annulus", "r_in": fraction_to_json(self.r_in), "r_out": fraction_to_json(self.r_out)}


@dataclass(frozen=True)
class Primes:
    def contains(self, p: Point) -> bool:
        return len(p) == 1 and p[0].denominator == 1 and is_prime(p[0].numerator)

    def to_json(self) -> dict:
        return {"kind": "Primes"}


@dataclass(frozen=True)
class ParabolaPWL:
    """Graph of the piecewise-linear interpolant of ``y = x^2`` through integer ``x``."""

    def contains(self, p: Point) -> bool:
        if len(p) != 2:
            return False
        x, y = p
        k = math.floor(x)
        return y == k * k + (x - k) * (2 * k + 1)

    def to_json(self) -> dict:
        return {"kind": "ParabolaPWL"}


@dataclass(frozen=True)
class HyperbolaMixed:
    """``{x in N_{>=1} x R : x1 * x2 >= 1}``."""

    def contains(self, p: Point) -> bool:
        if len(p) != 2:
            return False
        x1, x2 = p
        return x1.denominator == 1 and x1 >= 1 and x1 * x2 >= 1

    def to_json(self) -> dict:
        return {"kind": "HyperbolaMixed"}


@dataclass(frozen=True)
class UserGrid:
    points: frozenset

    def __post_init__(self):
        object.__setattr__(self, "points", frozenset(as_point(p) for p in self.points))

    def contains(self, p: Point) -> bool:
        return as_point(p) in self.points

    def to_json(self) -> dict:
        return {"kind": "UserGrid", "points": [[fraction_to_json(c) for c in p] for p in sorted(self.points)]}


SetOracle = RankLeOne | Annulus | Primes | ParabolaPWL | HyperbolaMixed | UserGrid


def as_point(p) -> Point:
    if isinstance(p, (int, Fraction, str)):
        return (as_fraction(p),)
    flat = []
    for c in p:
        if isinstance(c, (list, tuple)):
            flat.extend(as_fraction(x) for x in c)
        else:
            flat.append(as_fraction(c))
    return tuple(flat)


def oracle_from_json(data: dict) -> SetOracle:
    kind = data["kind"]
    if kind == "RankLeOne":
        return RankLeOne(int(data["rows"]), int(data["cols"]))
    if kind == "Annulus":
        return Annulus(as_fraction(data["r_in"]), as_fraction(data["r_out"]))
    if kind == "Primes":
        return Primes()
    if kind == "ParabolaPWL":
        return ParabolaPWL()
    if kind == "HyperbolaMixed":
        return HyperbolaMixed()
    if kind == "UserGrid":
        return UserGrid(frozenset(as_point(p) for p in data["points"]))
    raise ValueError(f"unknown oracle kind {kind!r}")


def midpoint(p: Point, q: Point) -> Point:
    return tuple((a + b) / 2 for a, b in zip(p, q))


# --- certificates ----------------------------------------------------------

UNVERIFIED = "Unverified"
VERIFIED = "Verified"
REFUTED = "Refuted"


@dataclass(frozen=True)
class Refutation:
    """Why a certificate fails: ``non_member`` (one index), ``duplicate`` or ``member_midpoint``."""

    reason: str
    indices: tuple[int, ...]

    def to_json(self) -> dict:
        return {"reason": self.reason, "indices": list(self.indices)}


@dataclass(frozen=True)
class MidpointCertificate:
    oracle: SetOracle
    points: tuple[Point, ...]
    status: str = UNVERIFIED
    refutation: Refutation | None = None

    def to_json(self) -> dict:
        out = {
            "oracle": self.oracle.to_json(),
            "points": [[fraction_to_json(c) for c in p] for p in self.points],
            "status": self.status,
        }
        if self.refutation is not None:
            out["refutation"] = self.refutation.to_json()
        return out

    @classmethod
    def from_json(cls, data: dict) -> "MidpointCertificate":
        return cls(oracle_from_json(data["oracle"]), tuple(as_point(p) for p in data["points"]))


def verify_certificate(c: MidpointCertificate) -> MidpointCertificate:
    """Exact check; the first failure in index order is recorded.

    Points are checked for membership first, then for duplicates, then
    pairs ``(i, j)`` with ``i < j`` lexicographically for a member midpoint.
    """
    pts = c.points
    for i, p in enumerate(pts):
        if not c.oracle.contains(p):
            return replace(c, status=REFUTED, refutation=Refutation("non_member", (i,)))
    seen: dict[Point, int] = {}
    for j, p in enumerate(pts):
        if p in seen:
            return replace(c, status=REFUTED, refutation=Refutation("duplicate", (seen[p], j)))
        seen[p] = j
    for i, j in itertools.combinations(range(len(pts)), 2):
        if c.oracle.contains(midpoint(pts[i], pts[j])):
            return replace(c, status=REFUTED, refutation=Refutation("member_midpoint", (i, j)))
    return replace(c, status=VERIFIED, refutation=None)


class BudgetExhausted(Exception):
    def __init__(self, best: MidpointCertificate, tests: int):
        super().__init__(f"budget exhausted after {tests} membership tests; best size {len(best.points)}")
        self.best = best
        self.tests = tests


def search_certificate(oracle: SetOracle, stream: Iterable, target: int, budget: int) -> MidpointCertificate:
    """Greedy search over a candidate stream.

    A candidate joins when it is a member and its midpoints with every
    chosen point are non-members.  ``budget`` caps the number of oracle
    calls; running out (or exhausting the stream) raises
    :class:`BudgetExhausted` carrying the best family so far.
    """
    if target < 2:
        raise ValueError("target must be at least 2")
    chosen: list[Point] = []
    tests = 0

    def ask(p: Point) -> bool | None:
        nonlocal tests
        if tests >= budget:
            return None
        tests += 1
        return oracle.contains(p)

    for raw in stream:
        cand = as_point(raw)
        if cand in chosen:
            continue
        ok = ask(cand)
        if ok is None:
            break
        if not ok:
            continue
        for p in chosen:
            hit = ask(midpoint(p, cand))
            if hit is None or hit:
                ok = None if hit is None else False
                break
        if ok is None:
            break
        if ok:
            chosen.append(cand)
            if len(chosen) >= target:
                return verify_certificate(MidpointCertificate(oracle, tuple(chosen)))
    raise BudgetExhausted(verify_certificate(MidpointCertificate(oracle, tuple(chosen))), tests)


# --- certificate families --------------------------------------------------


def rank_one_family(count: int, cols: int = 2) -> MidpointCertificate:
    """``A_k = [[1, k, 0..], [k, k^2, 0..]]`` for ``k < count``.

    Any two differ in the 2x2 leading minor of their average, which is
    ``((k - k')/2)^2 != 0``.
    """
    pts = []
    for k in range(count):
        pad = [0] * (cols - 2)
        pts.append(as_point([[1, k, *pad], [k, k * k, *pad]]))
    return MidpointCertificate(RankLeOne(2, cols), tuple(pts))


def inner_circle_points(radius, count: int) -> list[Point]:
    """Distinct rational points on the circle of the given radius.

    Uses ``t -> r*((1-t^2)/(1+t^2), 2t/(1+t^2))`` at ``t = 0, 1/3, 2/3, ...``;
    the map is injective, so the family grows without bound.
    """
    r = as_fraction(radius)
    out = []
    for i in range(count):
        t = Fraction(i, 3)
        d = 1 + t * t
        out.append((r * (1 - t * t) / d, r * 2 * t / d))
    return out


def annulus_family(r_in, r_out, count: int) -> MidpointCertificate:
    """Points on the inner circle; the chord midpoint of two of them is strictly inside the hole."""
    return MidpointCertificate(Annulus(as_fraction(r_in), as_fraction(r_out)), tuple(inner_circle_points(r_in, count)))


def parabola_family(ks: Sequence[int]) -> MidpointCertificate:
    """Points ``(k, k^2)``; with all ``k`` even the midpoints sit strictly above the graph."""
    return MidpointCertificate(ParabolaPWL(), tuple((Fraction(k), Fraction(k * k)) for k in ks))


def lattice_stream(seed: int | None = None, radius: int = 12) -> Iterator[Point]:
    """Integer points ``(a, b)`` with ``|a|, |b| <= radius`` by growing shells.

    With ``seed`` set, each shell is shuffled deterministically.
    """
    import random

    rng = random.Random(seed) if seed is not None else None
    for shell in range(radius + 1):
        ring = [(a, b) for a in range(-shell, shell + 1) for b in range(-shell, shell + 1) if max(abs(a), abs(b)) == shell]
        if rng is not None:
            rng.shuffle(ring)
        for a, b in ring:
            yield (Fraction(a), Fraction(b))


def named_stream(name: str, seed: int | None = None) -> Iterator[Point]:
    if name == "primes":
        return ((Fraction(p),) for p in primes_from(3))
    if name == "lattice":
        return lattice_stream(seed)
    if name == "naturals":
        return ((Fraction(n),) for n in itertools.count())
    if name == "parabola-even":
        return ((Fraction(k), Fraction(k * k)) for k in itertools.count(0, 2))
    raise ValueError(f"unknown stream {name!r}")


# --- parity pigeonhole -----------------------------------------------------


class NoPairGuaranteed(ValueError):
    pass


def same_parity_pair(vectors: Sequence[Sequence[int]]) -> tuple[int, int]:
    """First ``(i, j)``, ``i < j``, whose vectors agree componentwise mod 2.

    More than ``2^d`` vectors in ``Z^d`` always contain such a pair.
    """
    seen: dict[tuple[int, ...], int] = {}
    for j, v in enumerate(vectors):
        key = tuple(int(c) % 2 for c in v)
        if key in seen:
            i = seen[key]
            mid2 = [int(a) + int(b) for a, b in zip(vectors[i], v)]
            assert all(m % 2 == 0 for m in mid2)
            return i, j
        seen[key] = j
    d = len(vectors[0]) if len(vectors) else 0
    raise NoPairGuaranteed(f"{len(vectors)} vectors in Z^{d} with pairwise distinct parities")
