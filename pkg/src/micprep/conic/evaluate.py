"""Feasibility of a point against a conic set or an MICP formulation."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from ..qsqrt2 import ScalarQ2, is_exact
from .sets import LORENTZ, NONNEG, ZERO, ConeBlock, DimensionMismatch, LinConicSet, MicpFormulation

DEFAULT_TOLERANCE = 1e-9


@dataclass(frozen=True)
class BlockResidual:
    kind: str
    start: int
    size: int
    residual: float
    ok: bool


@dataclass(frozen=True)
class FeasReport:
    feasible: bool
    exact: bool
    blocks: tuple[BlockResidual, ...]
    integrality_ok: bool = True
    non_integer: tuple[int, ...] = field(default=())

    @property
    def max_residual(self) -> float:
        return max((b.residual for b in self.blocks), default=0.0)

    def to_json(self) -> dict:
        return {
            "feasible": self.feasible,
            "exact": self.exact,
            "integrality_ok": self.integrality_ok,
            "non_integer": list(self.non_integer),
            "blocks": [
                {"kind": b.kind, "start": b.start, "size": b.size, "residual": b.residual, "ok": b.ok}
                for b in self.blocks
            ],
        }


def row_values(t: LinConicSet, point: Sequence) -> list:
    """``A u - b`` exactly when the point is exact, in floats otherwise."""
    if len(point) != t.nvars:
        raise DimensionMismatch(f"point has {len(point)} coordinates, set has {t.nvars} variables")
    if all(is_exact(p) for p in point):
        pt = [ScalarQ2.coerce(p) for p in point]
        out = []
        for row, rhs in zip(t.A, t.b):
            acc = -rhs
            for c, p in zip(row, pt):
                if c.u or c.v:
                    acc = acc + c * p
            out.append(acc)
        return out
    pt = [float(p) for p in point]
    return [sum(float(c) * p for c, p in zip(row, pt)) - float(rhs) for row, rhs in zip(t.A, t.b)]


def _block_exact(blk: ConeBlock, vals: list[ScalarQ2]) -> bool:
    if blk.kind == ZERO:
        return all(v == 0 for v in vals)
    if blk.kind == NONNEG:
        return all(v >= 0 for v in vals)
    if blk.kind == LORENTZ:
        t, xs = vals[0], vals[1:]
        sq = sum((x * x for x in xs), ScalarQ2(0))
        return t >= 0 and t * t >= sq
    s, t, ws = vals[0], vals[1], vals[2:]
    sq = sum((w * w for w in ws), ScalarQ2(0))
    return s >= 0 and t >= 0 and s * t >= sq


def _block_residual(blk: ConeBlock, vals: list[float]) -> float:
    if blk.kind == ZERO:
        return max(abs(v) for v in vals)
    if blk.kind == NONNEG:
        return max(0.0, -min(vals))
    if blk.kind == LORENTZ:
        t, xs = vals[0], vals[1:]
        return max(0.0, math.hypot(*xs) - t) if xs else max(0.0, -t)
    s, t, ws = vals[0], vals[1], vals[2:]
    return max(0.0, sum(w * w for w in ws) - s * t, -s, -t)


def _is_integer(value, tolerance: float) -> bool:
    if isinstance(value, int):
        return True
    if isinstance(value, Fraction):
        return value.denominator == 1
    if isinstance(value, ScalarQ2):
        return value.v == 0 and value.u.denominator == 1
    return abs(float(value) - round(float(value))) <= tolerance


def eval_point(obj: LinConicSet | MicpFormulation, point: Sequence, tolerance: float = DEFAULT_TOLERANCE) -> FeasReport:
    """Per-block residuals plus a verdict.

    The verdict is exact when every coordinate is an int, Fraction or
    ScalarQ2 (all set data is exact already); otherwise each block passes
    when its residual is at most ``tolerance``.  For a formulation the
    integer variables must also be integral.
    """
    body = obj.body if isinstance(obj, MicpFormulation) else obj
    point = list(point)
    vals = row_values(body, point)
    exact = all(is_exact(p) for p in point)
    results = []
    for blk in body.blocks:
        bvals = vals[blk.start : blk.start + blk.size]
        residual = _block_residual(blk, [float(v) for v in bvals])
        ok = _block_exact(blk, bvals) if exact else residual <= tolerance
        results.append(BlockResidual(blk.kind, blk.start, blk.size, residual, ok))
    non_integer: tuple[int, ...] = ()
    if isinstance(obj, MicpFormulation):
        non_integer = tuple(j for j in obj.integer_vars if not _is_integer(point[j], tolerance))
    feasible = all(r.ok for r in results) and not non_integer
    return FeasReport(feasible, exact, tuple(results), not non_integer, non_integer)
