"""Exact algebra on eventually periodic subsets of the naturals.

A subset of N given as a finite set plus a union of arithmetic progressions
is always eventually periodic.  :class:`EventuallyPeriodicSet` stores the
canonical form (minimal period, then minimal threshold), so two values
denote the same set iff they compare equal.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Callable, Iterable, Sequence


@dataclass(frozen=True, order=True)
class ArithmeticProgression:
    """The infinite set ``{offset + step*m : m in N}``."""

    offset: int
    step: int

    def __post_init__(self):
        if self.offset < 0:
            raise ValueError(f"offset must be a natural number, got {self.offset}")
        if self.step < 1:
            raise ValueError(f"step must be >= 1, got {self.step}")

    def __contains__(self, n: int) -> bool:
        return ap_member(self, n)

    def to_json(self) -> dict:
        return {"offset": self.offset, "step": self.step}

    @classmethod
    def from_json(cls, data: dict) -> "ArithmeticProgression":
        return cls(int(data["offset"]), int(data["step"]))


def ap_member(ap: ArithmeticProgression, n: int) -> bool:
    return n >= ap.offset and (n - ap.offset) % ap.step == 0


@dataclass(frozen=True)
class EventuallyPeriodicSet:
    """Canonical eventually periodic subset of N.

    ``n`` is a member iff ``n in exceptional`` (for ``n < threshold``) or
    ``n % period in residues`` (for ``n >= threshold``).  Build values with
    :func:`from_parts` or :func:`canonicalize`; the constructor only checks
    the structural invariants, not minimality.
    """

    exceptional: tuple[int, ...]
    threshold: int
    period: int
    residues: frozenset[int]

    def __post_init__(self):
        if self.period < 1:
            raise ValueError("period must be >= 1")
        if self.threshold < 0:
            raise ValueError("threshold must be >= 0")
        if list(self.exceptional) != sorted(set(self.exceptional)):
            raise ValueError("exceptional part must be strictly increasing")
        if any(e < 0 or e >= self.threshold for e in self.exceptional):
            raise ValueError("exceptional elements must lie in [0, threshold)")
        if any(r < 0 or r >= self.period for r in self.residues):
            raise ValueError("residues must lie in [0, period)")

    def __contains__(self, n: int) -> bool:
        return eps_member(self, n)

    @property
    def is_finite(self) -> bool:
        return not self.residues

    def members(self, upto: int) -> list[int]:
        """Members in ``[0, upto]``."""
        return [n for n in range(upto + 1) if eps_member(self, n)]

    def to_json(self) -> dict:
        return {
            "exceptional": list(self.exceptional),
            "threshold": self.threshold,
            "period": self.period,
            "residues": sorted(self.residues),
        }

    @classmethod
    def from_json(cls, data: dict) -> "EventuallyPeriodicSet":
        raw = cls(
            tuple(sorted(int(e) for e in data.get("exceptional", []))),
            int(data["threshold"]),
            int(data["period"]),
            frozenset(int(r) for r in data.get("residues", [])),
        )
        return canonicalize(raw.__contains__, raw.threshold, raw.period)


EMPTY = EventuallyPeriodicSet((), 0, 1, frozenset())


def eps_member(s: EventuallyPeriodicSet, n: int) -> bool:
    if n < 0:
        return False
    if n < s.threshold:
        # exceptional is short at desk scale; bisect is not worth it
        return n in s.exceptional
    return n % s.period in s.residues


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def _minimal_cyclic_period(bits: Sequence[bool]) -> int:
    """Smallest d dividing len(bits) with bits invariant under rotation by d.

    Uses the KMP failure function of the pattern.
    """
    n = len(bits)
    fail = [0] * n
    k = 0
    for i in range(1, n):
        while k and bits[i] != bits[k]:
            k = fail[k - 1]
        if bits[i] == bits[k]:
            k += 1
        fail[i] = k
    d = n - fail[-1]
    return d if n % d == 0 else n


def canonicalize(
    member: Callable[[int], bool], start: int, period: int
) -> EventuallyPeriodicSet:
    """Canonical form of a set whose indicator is ``period``-periodic on ``[start, inf)``.

    The caller guarantees the periodicity claim; only ``[0, start + period)``
    of the indicator is read.
    """
    if period < 1:
        raise ValueError("period must be >= 1")
    pattern = [bool(member(n)) for n in range(start, start + period)]
    p = _minimal_cyclic_period(pattern)
    threshold = start
    while threshold > 0 and bool(member(threshold - 1)) == bool(member(threshold - 1 + p)):
        threshold -= 1
    residues = frozenset(n % p for n in range(threshold, threshold + p) if member(n))
    exceptional = tuple(n for n in range(threshold) if member(n))
    if not residues:
        threshold = exceptional[-1] + 1 if exceptional else 0
    return EventuallyPeriodicSet(exceptional, threshold, p, residues)


def from_parts(
    aps: Iterable[ArithmeticProgression] = (), finite: Iterable[int] = ()
) -> EventuallyPeriodicSet:
    """Canonical set denoting ``finite`` union all progressions in ``aps``."""
    aps = list(aps)
    finite = frozenset(int(n) for n in finite)
    if any(n < 0 for n in finite):
        raise ValueError("finite part must contain natural numbers only")

    def member(n: int) -> bool:
        return n in finite or any(ap_member(ap, n) for ap in aps)

    period = 1
    for ap in aps:
        period = _lcm(period, ap.step)
    start = max([ap.offset for ap in aps] + [n + 1 for n in finite] + [0])
    return canonicalize(member, start, period)


def common_step_form(
    s: EventuallyPeriodicSet,
) -> tuple[frozenset[int], list[ArithmeticProgression]]:
    """Split ``s`` into a finite part and progressions that all use step ``s.period``.

    Each progression starts at the least member ``b`` of its residue class
    such that the whole thread ``b + period*N`` lies in ``s``; exceptional
    members swallowed by a thread are dropped from the finite part.
    """
    p = s.period
    aps = []
    absorbed = set()
    for r in sorted(s.residues):
        b = s.threshold + (r - s.threshold) % p
        while b - p >= 0 and eps_member(s, b - p):
            b -= p
        aps.append(ArithmeticProgression(b, p))
        absorbed.update(range(b, s.threshold, p))
    finite = frozenset(e for e in s.exceptional if e not in absorbed)
    return finite, aps


@dataclass(frozen=True)
class MilpRepVerdict:
    """Outcome of the rational-MILP representability test.

    ``kind`` is one of ``"RepresentableWithStep"``, ``"FiniteSet"`` or
    ``"NotRepresentable"``; ``step`` is set only for the first.
    """

    kind: str
    step: int | None = None

    REPRESENTABLE = "RepresentableWithStep"
    FINITE = "FiniteSet"
    NOT_REPRESENTABLE = "NotRepresentable"

    def to_json(self) -> dict:
        out: dict = {"verdict": self.kind}
        if self.step is not None:
            out["step"] = self.step
        return out


def closed_under_step(s: EventuallyPeriodicSet, a: int) -> bool:
    """Whether ``s + a`` is contained in ``s``.

    Members above ``threshold + period`` repeat the residue pattern, so the
    check window ``threshold + 2*period + 2*a`` is more than enough.
    """
    limit = s.threshold + 2 * s.period + 2 * a
    return all(eps_member(s, m + a) for m in range(limit + 1) if eps_member(s, m))


def decide_rational_milp(s: EventuallyPeriodicSet) -> MilpRepVerdict:
    """Decide whether ``s`` is a finite union of infinite progressions with one step.

    If some ``a`` works then the least multiple of ``period`` that is
    ``>= max(threshold, 1)`` works too, so candidates stop at
    ``threshold + period``.
    """
    if s.is_finite:
        return MilpRepVerdict(MilpRepVerdict.FINITE)
    for a in range(1, s.threshold + s.period + 1):
        if closed_under_step(s, a):
            return MilpRepVerdict(MilpRepVerdict.REPRESENTABLE, a)
    return MilpRepVerdict(MilpRepVerdict.NOT_REPRESENTABLE)


def decide_rational_micp(
    s: EventuallyPeriodicSet,
) -> tuple[frozenset[int], list[ArithmeticProgression]]:
    """Finite set plus infinite progressions whose union is ``s``.

    Every eventually periodic set has such a decomposition, so this never
    fails; it is :func:`common_step_form` under another name.
    """
    return common_step_form(s)


@dataclass(frozen=True)
class NoPeriodFound:
    window: int
    max_period: int

    def to_json(self) -> dict:
        return {"result": "NoPeriodFound", "window": self.window, "max_period": self.max_period}


def oracle_periodicity_scan(
    oracle: Callable[[int], bool], window: int, max_period: int
) -> EventuallyPeriodicSet | NoPeriodFound:
    """Look for eventual periodicity of ``oracle`` on ``[0, window]``.

    Returns the set with the smallest period ``p <= max_period`` (then the
    smallest threshold) that agrees with the oracle on the window, subject to
    the periodic tail covering at least half the window and two full periods.
    A :class:`NoPeriodFound` result says nothing about representability.
    """
    bits = [bool(oracle(n)) for n in range(window + 1)]
    for p in range(1, max_period + 1):
        # smallest N with bits[n] == bits[n + p] for all n in [N, window - p]
        n = window - p
        while n >= 0 and bits[n] == bits[n + p]:
            n -= 1
        threshold = n + 1
        if threshold > window // 2 or window - threshold + 1 < 2 * p:
            continue
        return canonicalize(bits.__getitem__, threshold, p)
    return NoPeriodFound(window, max_period)


def parse_set(data: dict) -> EventuallyPeriodicSet:
    """Read either a parts description or a canonical-form description."""
    if "threshold" in data:
        return EventuallyPeriodicSet.from_json(data)
    aps = [ArithmeticProgression.from_json(ap) for ap in data.get("aps", [])]
    return from_parts(aps, data.get("finite", []))


def parts_to_json(finite: Iterable[int], aps: Iterable[ArithmeticProgression]) -> dict:
    return {"finite": sorted(finite), "aps": [ap.to_json() for ap in aps]}
