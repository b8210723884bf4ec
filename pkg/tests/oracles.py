"""Brute-force reference computations, kept independent of the package code."""
from __future__ import annotations

from fractions import Fraction

import numpy as np


def parts_member(aps, finite, n):
    """``aps`` as (offset, step) pairs."""
    return n in finite or any(n >= b and (n - b) % a == 0 for b, a in aps)


def bits_of(member, upto):
    return [bool(member(n)) for n in range(upto + 1)]


def brute_period(bits, max_period=None, min_tail=None, candidates=None):
    """Smallest (period, threshold) with ``bits[n] == bits[n+p]`` on the checked tail.

    The tail ``[threshold, len)`` must be at least ``min_tail`` long
    (default: half the window).  ``candidates`` restricts the periods tried.
    """
    arr = np.asarray(bits, dtype=bool)
    n = len(arr)
    min_tail = n // 2 if min_tail is None else min_tail
    periods = candidates if candidates is not None else range(1, (max_period or n // 2) + 1)
    for p in periods:
        bad = np.nonzero(arr[:-p] != arr[p:])[0]
        N = int(bad[-1]) + 1 if len(bad) else 0
        if n - N >= min_tail:
            return p, N
    return None


def closure_steps(member, upto, amax):
    """All ``a <= amax`` with ``m + a`` a member for every member ``m <= upto - a``."""
    members = [m for m in range(upto + 1) if member(m)]
    return [a for a in range(1, amax + 1) if all(member(m + a) for m in members if m + a <= upto)]


def semigroup_elements(gens, upto):
    """Nonnegative integer combinations up to ``upto``, by closing ``{0}`` under ``+g``."""
    found = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for s in frontier:
            for g in gens:
                t = s + g
                if t <= upto and t not in found:
                    found.add(t)
                    nxt.append(t)
        frontier = nxt
    return found


def semigroup_mask(gens, upto):
    """Boolean mask of intcone(gens) on [0, upto].

    Closing under +g, +2g, +4g, ... in turn covers every multiple of g
    below the window length, so the result is exact on the window.
    """
    mask = np.zeros(upto + 1, dtype=bool)
    mask[0] = True
    for g in gens:
        shift = g
        while shift <= upto:
            mask[shift:] |= mask[:-shift]
            shift *= 2
    return mask


def closure_steps_mask(mask, amax):
    """Vectorized :func:`closure_steps` on a precomputed membership mask."""
    out = []
    for a in range(1, amax + 1):
        if np.all(mask[a:] | ~mask[:-a]):
            out.append(a)
    return out


def rank2x2(m):
    """Rank of a 2x2 rational matrix."""
    (a, b), (c, d) = m
    if a * d - b * c != 0:
        return 2
    return 0 if a == b == c == d == 0 else 1


def sieve(upto):
    flags = [True] * (upto + 1)
    flags[0:2] = [False, False]
    for i in range(2, int(upto**0.5) + 1):
        if flags[i]:
            flags[i * i :: i] = [False] * len(flags[i * i :: i])
    return flags


def frac(x: Fraction) -> Fraction:
    return x - (x.numerator // x.denominator)
