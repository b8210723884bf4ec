"""Interval-valued families, rational recession directions and the sqrt(2) gap set."""
from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

import sympy

from .qsqrt2 import SQRT2, ScalarQ2, as_fraction, fraction_to_json

log = logging.getLogger(__name__)

Index = tuple[Fraction, ...]


def as_index(z) -> Index:
    if isinstance(z, (list, tuple)):
        return tuple(as_fraction(c) for c in z)
    return (as_fraction(z),)


@dataclass(frozen=True)
class IntervalFamily:
    """Intervals ``A_z = [lower(z), upper(z)]`` over a finite index set.

    ``upper`` may be ``None`` for an interval unbounded above.
    """

    domain: tuple[Index, ...]
    lower: Mapping[Index, ScalarQ2]
    upper: Mapping[Index, ScalarQ2 | None]

    def __post_init__(self):
        for z in self.domain:
            if z not in self.lower or z not in self.upper:
                raise ValueError(f"no endpoints for index {z}")
            g = self.upper[z]
            if g is not None and self.lower[z] > g:
                raise ValueError(f"empty interval at index {z}")

    @classmethod
    def from_functions(cls, domain: Iterable, lower: Callable, upper: Callable) -> "IntervalFamily":
        dom = tuple(as_index(z) for z in domain)
        lo = {}
        up = {}
        for z in dom:
            arg = z[0] if len(z) == 1 else z
            lo[z] = ScalarQ2.coerce(lower(arg))
            g = upper(arg)
            up[z] = None if g is None else ScalarQ2.coerce(g)
        return cls(dom, lo, up)

    def contains(self, z: Index, x) -> bool:
        x = ScalarQ2.coerce(x)
        g = self.upper[z]
        return self.lower[z] <= x and (g is None or x <= g)

    def with_lower(self, z, value) -> "IntervalFamily":
        lo = dict(self.lower)
        lo[as_index(z)] = ScalarQ2.coerce(value)
        return IntervalFamily(self.domain, lo, self.upper)

    def to_json(self) -> dict:
        enc = lambda z: [fraction_to_json(c) for c in z]  # noqa: E731
        return {
            "domain": [enc(z) for z in self.domain],
            "lower": [self.lower[z].to_json() for z in self.domain],
            "upper": ["inf" if self.upper[z] is None else self.upper[z].to_json() for z in self.domain],
        }

    @classmethod
    def from_json(cls, data: dict) -> "IntervalFamily":
        dom = tuple(as_index(z) for z in data["domain"])
        lo = {z: ScalarQ2.from_json(v) for z, v in zip(dom, data["lower"])}
        up = {z: None if v == "inf" else ScalarQ2.from_json(v) for z, v in zip(dom, data["upper"])}
        return cls(dom, lo, up)


def hyperbola_family(zmax: int) -> IntervalFamily:
    """Column slices ``[1/z, inf)`` of ``{x1 * x2 >= 1}`` at ``z = 1..zmax``."""
    return IntervalFamily.from_functions(range(1, zmax + 1), lambda z: 1 / z, lambda z: None)


@dataclass(frozen=True)
class FamilyCheck:
    ok: bool
    violation: tuple | None = None
    skipped: int = 0

    def to_json(self) -> dict:
        out: dict = {"result": "OK" if self.ok else "Violation", "skipped": self.skipped}
        if self.violation is not None:
            out["violation"] = _jsonable(self.violation)
        return out


def _jsonable(obj):
    if isinstance(obj, Fraction):
        return fraction_to_json(obj)
    if isinstance(obj, ScalarQ2):
        return obj.to_json()
    if isinstance(obj, (list, tuple)):
        return [_jsonable(o) for o in obj]
    return obj


def _combo(lam: Fraction, a: ScalarQ2 | None, b: ScalarQ2 | None) -> ScalarQ2 | None:
    """``lam*a + (1-lam)*b`` with ``None`` as +inf; zero weights drop their term."""
    total = ScalarQ2(0)
    for w, v in ((lam, a), (1 - lam, b)):
        if w == 0:
            continue
        if v is None:
            return None
        total = total + v * w
    return total


def check_convex_family(fam: IntervalFamily, lambdas: Sequence) -> FamilyCheck:
    """Exact test of ``lam*A_z + (1-lam)*A_z' ⊆ A_(lam*z + (1-lam)*z')``.

    For intervals this is: the lower endpoint is convex and the upper one
    concave along each tested combination.  Pairs run ``i < j`` in domain
    order, then over ``lambdas`` in the given order; the first violation is
    returned as ``(z, z', lam, side)``.  Combinations landing outside the
    domain are skipped and counted.
    """
    lambdas = [as_fraction(l) for l in lambdas]
    if any(not 0 <= l <= 1 for l in lambdas):
        raise ValueError("lambda values must lie in [0, 1]")
    index = set(fam.domain)
    skipped = 0
    for z, w in itertools.combinations(fam.domain, 2):
        for lam in lambdas:
            mid = tuple(lam * a + (1 - lam) * b for a, b in zip(z, w))
            if mid not in index:
                skipped += 1
                continue
            lo = _combo(lam, fam.lower[z], fam.lower[w])
            if fam.lower[mid] > lo:
                return FamilyCheck(False, (z, w, lam, "lower"), skipped)
            hi = _combo(lam, fam.upper[z], fam.upper[w])
            g_mid = fam.upper[mid]
            if hi is None:
                bad = g_mid is not None
            else:
                bad = g_mid is not None and g_mid < hi
            if bad:
                return FamilyCheck(False, (z, w, lam, "upper"), skipped)
    if skipped:
        log.warning("convexity check skipped %d combinations outside the index set", skipped)
    return FamilyCheck(True, None, skipped)


@dataclass(frozen=True)
class ConvergentSample:
    """Finite prefix of ``z_m -> limit_index`` with ``x_m in A_(z_m)``, ``x_m -> limit_point``."""

    indices: tuple[Index, ...]
    points: tuple[Fraction, ...]
    limit_index: Index
    limit_point: Fraction

    @classmethod
    def make(cls, indices: Iterable, points: Iterable, limit_index, limit_point) -> "ConvergentSample":
        return cls(
            tuple(as_index(z) for z in indices),
            tuple(as_fraction(x) for x in points),
            as_index(limit_index),
            as_fraction(limit_point),
        )

    @classmethod
    def from_json(cls, data: dict) -> "ConvergentSample":
        return cls.make(data["indices"], data["points"], data["limit_index"], data["limit_point"])


def check_closed_sampled(fam: IntervalFamily, samples: Sequence[ConvergentSample]) -> FamilyCheck:
    """Check ``limit_point in A_(limit_index)`` for each supplied sample.

    Only the supplied sequences are examined, so ``OK`` is a necessary
    condition for closedness and nothing more.  The violation is reported as
    ``(sample number, limit_index, limit_point)``.
    """
    for n, s in enumerate(samples):
        for z in s.indices + (s.limit_index,):
            if z not in fam.lower:
                raise ValueError(f"sample {n}: index {z} is not in the domain")
        for z, x in zip(s.indices, s.points):
            if not fam.contains(z, x):
                raise ValueError(f"sample {n}: point {x} is not in A_{z}")
        if not fam.contains(s.limit_index, s.limit_point):
            return FamilyCheck(False, (n, s.limit_index, s.limit_point))
    return FamilyCheck(True)


# --- rational polyhedra ----------------------------------------------------


@dataclass(frozen=True)
class RationalPolyhedron:
    """``{x in Q^d : A x <= b}``."""

    dim: int
    A: tuple[tuple[Fraction, ...], ...]
    b: tuple[Fraction, ...]

    @classmethod
    def make(cls, A: Sequence[Sequence], b: Sequence, dim: int | None = None) -> "RationalPolyhedron":
        rows = tuple(tuple(as_fraction(c) for c in row) for row in A)
        if dim is None:
            if not rows:
                raise ValueError("dimension needed for an empty system")
            dim = len(rows[0])
        if any(len(r) != dim for r in rows) or len(rows) != len(b):
            raise ValueError("inconsistent polyhedron dimensions")
        return cls(dim, rows, tuple(as_fraction(c) for c in b))

    def contains(self, x: Sequence) -> bool:
        return all(sum(a * as_fraction(c) for a, c in zip(row, x)) <= rhs for row, rhs in zip(self.A, self.b))

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "A": [[fraction_to_json(c) for c in row] for row in self.A],
            "b": [fraction_to_json(c) for c in self.b],
        }

    @classmethod
    def from_json(cls, data: dict) -> "RationalPolyhedron":
        return cls.make(data["A"], data["b"], data.get("dim"))


def _primitive(vec: Sequence) -> tuple[int, ...]:
    fr = [Fraction(int(sympy.fraction(c)[0]), int(sympy.fraction(c)[1])) for c in vec]
    den = math.lcm(*(f.denominator for f in fr))
    ints = [int(f * den) for f in fr]
    g = math.gcd(*ints)
    return tuple(i // g for i in ints)


def integer_recession_direction(p: RationalPolyhedron) -> tuple[int, ...] | None:
    """A nonzero integer ``r`` with ``A r <= 0``, or ``None`` if the recession cone is ``{0}``.

    A nontrivial lineality space gives ``r`` directly; otherwise the cone is
    pointed and, if nonzero, has an extreme ray cut out by ``d - 1``
    independent rows of ``A``.
    """
    d = p.dim
    if not p.A:
        return tuple(1 if k == 0 else 0 for k in range(d))
    A = sympy.Matrix([[sympy.Rational(c.numerator, c.denominator) for c in row] for row in p.A])
    lineality = A.nullspace()
    if lineality:
        return _primitive(lineality[0])

    def in_cone(v) -> bool:
        return all(x <= 0 for x in A * v)

    if d == 1:
        candidates = [sympy.Matrix([1]), sympy.Matrix([-1])]
        for v in candidates:
            if in_cone(v):
                return _primitive(v)
        return None
    for rows in itertools.combinations(range(A.rows), d - 1):
        sub = A.extract(list(rows), list(range(d)))
        if sub.rank() != d - 1:
            continue
        (v,) = sub.nullspace()
        for cand in (v, -v):
            if in_cone(cand):
                return _primitive(cand)
    return None


def k_epsilon_outer(eps, slope_lo, slope_hi) -> RationalPolyhedron:
    """Rational polyhedron ``{x >= 0 : lo*x1 - eps <= x2 <= hi*x1 + hi*eps}``.

    With ``lo < sqrt2 < hi`` it contains ``K_eps``.
    """
    eps, lo, hi = as_fraction(eps), as_fraction(slope_lo), as_fraction(slope_hi)
    return RationalPolyhedron.make(
        [[-1, 0], [0, -1], [lo, -1], [-hi, 1]],
        [0, 0, eps, hi * eps],
    )


def k_epsilon_recession_violations(r: Sequence[int]) -> list[str]:
    """Which recession inequalities of ``K_eps`` the direction ``r`` breaks.

    ``K_eps`` recedes only along ``(1, sqrt2)``: a direction must satisfy
    ``sqrt2*r1 <= r2`` and ``r2 <= sqrt2*r1`` and ``r >= 0``.  Decided in
    Q(sqrt 2), so no nonzero integer direction passes.
    """
    r1, r2 = ScalarQ2(r[0]), ScalarQ2(r[1])
    bad = []
    if SQRT2 * r1 - r2 > 0:
        bad.append("sqrt2*r1 <= r2")
    if r2 - SQRT2 * r1 > 0:
        bad.append("r2 <= sqrt2*r1")
    if r1 < 0 or r2 < 0:
        bad.append("r >= 0")
    return bad


# --- the sqrt(2) gap set ---------------------------------------------------


@dataclass(frozen=True)
class BeattyGapSet:
    """``{x in N : frac(sqrt2 * x) not in (eps, 1 - sqrt2*eps)}``."""

    epsilon: Fraction

    def __post_init__(self):
        eps = as_fraction(self.epsilon)
        object.__setattr__(self, "epsilon", eps)
        # need 0 < eps and eps < 1 - sqrt2*eps, i.e. eps*(1 + sqrt2) < 1
        if eps <= 0 or ScalarQ2(eps, eps) >= 1:
            raise ValueError("epsilon must lie in (0, 1/(1 + sqrt2))")

    @property
    def gap(self) -> tuple[ScalarQ2, ScalarQ2]:
        return ScalarQ2(self.epsilon), ScalarQ2(1, -self.epsilon)


def frac_sqrt2(x: int) -> ScalarQ2:
    """``sqrt2*x - floor(sqrt2*x)`` exactly, using ``floor(sqrt2*x) = isqrt(2*x^2)``."""
    if x < 0:
        raise ValueError("x must be a natural number")
    return ScalarQ2(-math.isqrt(2 * x * x), x)


def beatty_member(s: BeattyGapSet, x: int) -> bool:
    lo, hi = s.gap
    f = frac_sqrt2(x)
    return not (lo < f < hi)


def ap_escape_scan(s: BeattyGapSet, a: int, b: int, k_max: int) -> int | None:
    """Smallest ``k <= k_max`` with ``a*k + b`` outside the set, else ``None``.

    ``None`` only means the scan stopped at ``k_max``.
    """
    if a < 1 or b < 0:
        raise ValueError("need a >= 1 and b >= 0")
    for k in range(k_max + 1):
        if not beatty_member(s, a * k + b):
            return k
    return None
