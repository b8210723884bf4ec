"""Split a point of ``conv(V) + cone(R)`` into a bounded part plus an integer ray part."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from ..qsqrt2 import as_fraction


class MultiplierInvalid(ValueError):
    pass


@dataclass(frozen=True)
class Decomposition:
    lambdas: tuple[Fraction, ...]
    fractional: tuple[Fraction, ...]
    integer: tuple[int, ...]
    point: tuple[Fraction, ...]
    hat_point: tuple[Fraction, ...]
    ray_point: tuple[Fraction, ...]

    def to_json(self) -> dict:
        f = lambda xs: [str(x) for x in xs]  # noqa: E731
        return {
            "lambdas": f(self.lambdas),
            "fractional": f(self.fractional),
            "integer": list(self.integer),
            "point": f(self.point),
            "hat_point": f(self.hat_point),
            "ray_point": f(self.ray_point),
        }


def _combine(vectors: Sequence[Sequence[Fraction]], weights: Sequence, dim: int) -> tuple[Fraction, ...]:
    out = [Fraction(0)] * dim
    for vec, w in zip(vectors, weights):
        for k in range(dim):
            out[k] += w * vec[k]
    return tuple(out)


def decompose_point(vertices: Sequence[Sequence], rays: Sequence[Sequence[int]], lambdas: Sequence, gammas: Sequence) -> Decomposition:
    """Move ``floor(gamma_j)`` copies of each integer ray out of the point.

    The remaining point uses multipliers ``(lambda, gamma - floor(gamma))``
    and so lies in the bounded set ``conv(V) + [0,1]-box of rays``; the
    removed part ``sum floor(gamma_j) r_j`` is in ``intcone(R)``.
    """
    lambdas = [as_fraction(x) for x in lambdas]
    gammas = [as_fraction(x) for x in gammas]
    if len(lambdas) != len(vertices) or len(gammas) != len(rays):
        raise MultiplierInvalid("one multiplier per vertex and per ray")
    if not vertices:
        raise MultiplierInvalid("need at least one vertex")
    if any(x < 0 for x in lambdas) or sum(lambdas) != 1:
        raise MultiplierInvalid("vertex multipliers must be nonnegative and sum to 1")
    if any(g < 0 for g in gammas):
        raise MultiplierInvalid("ray multipliers must be nonnegative")
    dim = len(vertices[0])
    verts = [[as_fraction(c) for c in v] for v in vertices]
    ray_vecs = []
    for r in rays:
        if any(not isinstance(c, int) for c in r):
            raise MultiplierInvalid("rays must have integer components")
        ray_vecs.append([Fraction(c) for c in r])
    if any(len(v) != dim for v in verts + ray_vecs):
        raise MultiplierInvalid("vertices and rays must share one dimension")

    integer = tuple(math.floor(g) for g in gammas)
    fractional = tuple(g - k for g, k in zip(gammas, integer))
    base = _combine(verts, lambdas, dim)
    point = tuple(b + r for b, r in zip(base, _combine(ray_vecs, gammas, dim)))
    hat = tuple(b + r for b, r in zip(base, _combine(ray_vecs, fractional, dim)))
    ray_point = _combine(ray_vecs, integer, dim)
    return Decomposition(tuple(lambdas), fractional, integer, point, hat, ray_point)
