"""Numerical semigroups and MILP representations of subsets of N.

A rational-MILP representable subset of N is ``{b_1..b_n} + intcone(z_1..z_r)``.
This module converts between that description and the canonical
:class:`~micprep.natset.EventuallyPeriodicSet`.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from math import gcd, prod
from typing import Iterable

from .natset import (
    ArithmeticProgression,
    EventuallyPeriodicSet,
    MilpRepVerdict,
    canonicalize,
    decide_rational_milp,
    eps_member,
    from_parts,
)


def normalize_generators(gens: Iterable[int]) -> tuple[int, ...]:
    gens = tuple(sorted(set(int(g) for g in gens)))
    if any(g < 1 for g in gens):
        raise ValueError(f"generators must be >= 1, got {gens}")
    return gens


def intcone_table(gens: Iterable[int], upto: int) -> list[bool]:
    """``table[n]`` tells whether ``n`` is a nonnegative integer combination of ``gens``."""
    gens = normalize_generators(gens)
    table = [False] * (upto + 1)
    if upto >= 0:
        table[0] = True
    for n in range(1, upto + 1):
        table[n] = any(g <= n and table[n - g] for g in gens)
    return table


def intcone_member(gens: Iterable[int], n: int) -> bool:
    if n < 0:
        return False
    return intcone_table(gens, n)[n]


@dataclass(frozen=True)
class GapData:
    g: int
    gaps: tuple[int, ...]
    conductor: int

    def to_json(self) -> dict:
        return {"g": self.g, "gaps": list(self.gaps), "conductor": self.conductor}


def gaps_and_conductor(gens: Iterable[int]) -> GapData:
    """Gaps and conductor of the semigroup generated by ``gens / gcd(gens)``.

    The reduced generators are coprime, so the semigroup is cofinite and its
    conductor is at most ``(g_min - 1) * (g_max - 1)``.
    """
    gens = normalize_generators(gens)
    if not gens:
        raise ValueError("gaps_and_conductor needs at least one generator")
    g = reduce(gcd, gens)
    reduced = normalize_generators(x // g for x in gens)
    bound = (reduced[0] - 1) * (reduced[-1] - 1)
    table = intcone_table(reduced, bound)
    gaps = tuple(n for n in range(bound + 1) if not table[n])
    conductor = gaps[-1] + 1 if gaps else 0
    return GapData(g, gaps, conductor)


@dataclass(frozen=True)
class MilpNatRep:
    """The set ``{bases} + intcone(gens)`` inside N."""

    bases: tuple[int, ...]
    gens: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "bases", tuple(sorted(set(int(b) for b in self.bases))))
        object.__setattr__(self, "gens", normalize_generators(self.gens))
        if not self.bases:
            raise ValueError("MilpNatRep needs at least one base point")
        if self.bases[0] < 0:
            raise ValueError("base points must be natural numbers")

    def member(self, n: int) -> bool:
        """Brute-force membership through the intcone table."""
        if n < self.bases[0]:
            return False
        table = intcone_table(self.gens, n - self.bases[0])
        return any(b <= n and table[n - b] for b in self.bases)

    def to_json(self) -> dict:
        return {"bases": list(self.bases), "generators": list(self.gens)}

    @classmethod
    def from_json(cls, data: dict) -> "MilpNatRep":
        return cls(tuple(data["bases"]), tuple(data.get("generators", ())))


def milp_nat_to_eps(rep: MilpNatRep) -> EventuallyPeriodicSet:
    """Canonical eventually periodic form of ``{bases} + intcone(gens)``.

    Past ``max(bases) + g*conductor`` every shifted copy of the cone is a
    full residue class mod ``g``, so the indicator is ``g``-periodic there.
    """
    if not rep.gens:
        return from_parts((), rep.bases)
    data = gaps_and_conductor(rep.gens)
    reduced = tuple(x // data.g for x in rep.gens)
    start = rep.bases[-1] + data.g * data.conductor
    horizon = start + data.g
    table = intcone_table(reduced, horizon // data.g + 1)

    def member(n: int) -> bool:
        for b in rep.bases:
            d = n - b
            if d >= 0 and d % data.g == 0 and table[d // data.g]:
                return True
        return False

    return canonicalize(member, start, data.g)


def schur_progressions(rep: MilpNatRep, limit: int = 10**6) -> list[ArithmeticProgression]:
    """Same-step progressions covering ``{bases} + intcone(gens)``, built per base point.

    For each base ``b`` with the reduced semigroup ``I = {alpha_1 < ... < alpha_m}
    u [alpha_m, inf)``, take ``P = prod(alpha_i)`` over the positive listed
    elements and ``J = {y <= 2P : y in I}``; then ``b + g*I`` equals the union
    of ``b + g*y + g*P*N`` over ``y in J``.  Raises ``OverflowError`` when
    ``2P`` exceeds ``limit``.
    """
    if not rep.gens:
        raise ValueError("no generators: the set is finite")
    data = gaps_and_conductor(rep.gens)
    reduced = tuple(x // data.g for x in rep.gens)
    alphas = [a for a in range(1, data.conductor + 1) if a not in data.gaps] or [1]
    P = prod(alphas)
    if 2 * P > limit:
        raise OverflowError(f"construction needs a window of {2 * P}, limit is {limit}")
    table = intcone_table(reduced, 2 * P)
    J = [y for y in range(2 * P + 1) if table[y]]
    return sorted(
        {ArithmeticProgression(b + data.g * y, data.g * P) for b in rep.bases for y in J}
    )


def eps_to_milp_nat(s: EventuallyPeriodicSet) -> MilpNatRep | MilpRepVerdict:
    """Inverse of :func:`milp_nat_to_eps` where one exists.

    Returns the ``NotRepresentable`` verdict when no single step closes ``s``.
    The empty set has no MILP description with a nonempty base list and is
    reported the same way.
    """
    verdict = decide_rational_milp(s)
    if verdict.kind == MilpRepVerdict.FINITE:
        if not s.exceptional:
            return MilpRepVerdict(MilpRepVerdict.NOT_REPRESENTABLE)
        return MilpNatRep(s.exceptional, ())
    if verdict.kind == MilpRepVerdict.NOT_REPRESENTABLE:
        return verdict
    a = verdict.step
    # closure under +a permutes the residues, so every thread starts below threshold + a
    bases = tuple(
        m
        for m in range(s.threshold + a)
        if eps_member(s, m) and not (m >= a and eps_member(s, m - a))
    )
    return MilpNatRep(bases, (a,))
