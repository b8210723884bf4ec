"""Compare ``union(S^i) + intcone(r_1..r_t)`` against a membership oracle on a window."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from ..qsqrt2 import as_fraction

Point = tuple[Fraction, ...]


@dataclass(frozen=True)
class Window:
    """Box ``[lo_k, hi_k]`` per coordinate, sampled on a grid of spacing ``step_k``."""

    lo: tuple[Fraction, ...]
    hi: tuple[Fraction, ...]
    step: tuple[Fraction, ...]

    def __post_init__(self):
        if not len(self.lo) == len(self.hi) == len(self.step):
            raise ValueError("window bounds and steps must have one entry per coordinate")
        if any(s <= 0 for s in self.step) or any(h < l for l, h in zip(self.lo, self.hi)):
            raise ValueError("window needs lo <= hi and positive grid steps")

    @classmethod
    def make(cls, lo: Sequence, hi: Sequence, step: Sequence | None = None) -> "Window":
        step = step if step is not None else [1] * len(lo)
        return cls(tuple(map(as_fraction, lo)), tuple(map(as_fraction, hi)), tuple(map(as_fraction, step)))

    def contains(self, p: Point) -> bool:
        return all(l <= c <= h for c, l, h in zip(p, self.lo, self.hi))

    def grid(self):
        axes = []
        for l, h, s in zip(self.lo, self.hi, self.step):
            count = math.floor((h - l) / s)
            axes.append([l + k * s for k in range(count + 1)])
        return itertools.product(*axes)

    def to_json(self) -> dict:
        return {"lo": [str(x) for x in self.lo], "hi": [str(x) for x in self.hi], "step": [str(x) for x in self.step]}

    @classmethod
    def from_json(cls, data: dict) -> "Window":
        return cls.make(data["lo"], data["hi"], data.get("step"))


@dataclass(frozen=True)
class MatchReport:
    matches: bool
    generated: int
    sampled: int
    spurious: tuple[Point, ...]
    missing: tuple[Point, ...]

    @property
    def mismatch(self) -> Point | None:
        if self.spurious:
            return self.spurious[0]
        if self.missing:
            return self.missing[0]
        return None

    def to_json(self) -> dict:
        enc = lambda pts: [[str(c) for c in p] for p in pts]  # noqa: E731
        return {
            "matches": self.matches,
            "generated": self.generated,
            "sampled": self.sampled,
            "spurious": enc(self.spurious),
            "missing": enc(self.missing),
        }


def default_multiplier_bound(window: Window, rays: Sequence[Sequence[int]]) -> int:
    """Enough copies of any ray to cross the window along its smallest nonzero component."""
    span = max((h - l for l, h in zip(window.lo, window.hi)), default=Fraction(0))
    smallest = min((abs(c) for r in rays for c in r if c != 0), default=1)
    return math.floor(span / smallest) + 1


def generate_points(pieces: Sequence[Sequence[Sequence]], rays: Sequence[Sequence[int]], window: Window, max_multiplier: int) -> set[Point]:
    rays = [tuple(int(c) for c in r) for r in rays]
    found: set[Point] = set()
    starts = {tuple(as_fraction(c) for c in p) for piece in pieces for p in piece}
    for mult in itertools.product(range(max_multiplier + 1), repeat=len(rays)):
        shift = [sum(m * r[k] for m, r in zip(mult, rays)) for k in range(len(window.lo))]
        for s in starts:
            p = tuple(c + d for c, d in zip(s, shift))
            if window.contains(p):
                found.add(p)
    return found


def milprep_window_check(
    oracle: Callable[[Point], bool],
    pieces: Sequence[Sequence[Sequence]],
    rays: Sequence[Sequence[int]],
    window: Window,
    max_multiplier: int | None = None,
    report_limit: int = 20,
) -> MatchReport:
    """Look for points where the candidate description and the oracle disagree.

    ``spurious`` points are generated but rejected by the oracle; ``missing``
    points are grid points accepted by the oracle but never generated.  Ray
    multipliers run up to ``max_multiplier`` each, so a match only speaks for
    this window.
    """
    if max_multiplier is None:
        max_multiplier = default_multiplier_bound(window, rays)
    generated = generate_points(pieces, rays, window, max_multiplier)
    spurious = sorted(p for p in generated if not oracle(p))
    sampled = 0
    missing = []
    for p in window.grid():
        sampled += 1
        if p not in generated and oracle(p):
            missing.append(p)
    return MatchReport(
        not spurious and not missing,
        len(generated),
        sampled,
        tuple(spurious[:report_limit]),
        tuple(missing[:report_limit]),
    )
