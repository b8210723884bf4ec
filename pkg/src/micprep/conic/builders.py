"""Explicit MICP formulations for finite unions and for subsets of N."""
from __future__ import annotations

from typing import Iterable, Sequence

from ..qsqrt2 import ScalarQ2, as_fraction, is_exact
from .evaluate import eval_point
from .sets import (
    LORENTZ,
    NONNEG,
    RLORENTZ,
    ZERO,
    BoundedUnionSpec,
    ConicBuilder,
    DimensionMismatch,
    LinConicSet,
    MicpFormulation,
    set_from_rows,
)


class WitnessInfeasible(ValueError):
    pass


def check_witness(t: LinConicSet, witness: Sequence) -> None:
    report = eval_point(t, witness)
    if not report.feasible:
        raise WitnessInfeasible(f"witness {list(witness)!r} is not in the set (max residual {report.max_residual})")


def conic_hull(t: LinConicSet, witness: Sequence) -> LinConicSet:
    """Homogenization ``{(u, z) : A u - b z in K, z >= 0}``.

    The last variable is the scale ``z``.  At ``z = 1`` this is ``t``; at
    ``z = 0`` it is the recession cone of ``t``.  For nonempty closed ``t``
    it is the closed conic hull.
    """
    check_witness(t, witness)
    n = t.nvars
    builder = ConicBuilder(n + 1)
    builder.extend(t, list(range(n)), homog=n)
    builder.add(NONNEG, [({n: 1}, 0)])
    return builder.build()


def _square_norm(values: Iterable):
    values = list(values)
    if all(is_exact(v) for v in values):
        return sum((ScalarQ2.coerce(v) * ScalarQ2.coerce(v) for v in values), ScalarQ2(0))
    return sum(float(v) ** 2 for v in values)


def _union_layout(spec: BoundedUnionSpec) -> tuple[list[int], int, list[int]]:
    """Column offsets of each piece copy, the ``t`` column and the ``z`` columns."""
    offsets = []
    col = spec.nx
    for piece in spec.pieces:
        offsets.append(col)
        col += piece.nvars
    t_col = col
    z_cols = [t_col + 1 + i for i in range(len(spec.pieces))]
    return offsets, t_col, z_cols


def build_bounded_union(spec: BoundedUnionSpec) -> MicpFormulation:
    """Formulation of the union of the pieces' x-projections.

    Each piece gets a copy ``(x_i, y_i)`` held in its conic hull with scale
    ``z_i``; ``x = sum x_i``, ``sum z_i = 1``, ``z`` binary, and the
    rotated cone ``||x_i||^2 <= z_i t`` with ``t >= 0`` pins the inactive
    copies' ``x_i`` to zero.
    """
    for piece, w in zip(spec.pieces, spec.witnesses):
        check_witness(piece, w)
    nx, k = spec.nx, len(spec.pieces)
    offsets, t_col, z_cols = _union_layout(spec)
    nvars = t_col + 1 + k
    builder = ConicBuilder(nvars)

    rows = []
    for c in range(nx):
        coeffs = {c: 1}
        for off in offsets:
            coeffs[off + c] = -1
        rows.append((coeffs, 0))
    rows.append(({z: 1 for z in z_cols}, -1))
    builder.add(ZERO, rows)

    for piece, off, z in zip(spec.pieces, offsets, z_cols):
        builder.extend(piece, [off + j for j in range(piece.nvars)], homog=z)
        builder.add(NONNEG, [({z: 1}, 0)])

    builder.add(NONNEG, [({z: -1}, 1) for z in z_cols] + [({t_col: 1}, 0)])
    for off, z in zip(offsets, z_cols):
        builder.add(RLORENTZ, [({z: 1}, 0), ({t_col: 1}, 0)] + [({off + c: 1}, 0) for c in range(nx)])

    names = [f"x{c}" for c in range(nx)]
    for i, piece in enumerate(spec.pieces):
        names += [f"x{c}[{i}]" for c in range(nx)]
        names += [f"y{j}[{i}]" for j in range(piece.nvars - nx)]
    names.append("t")
    names += [f"z[{i}]" for i in range(k)]
    return MicpFormulation(nx, nvars - nx - k, k, builder.build(), tuple(names))


def witness_bounded_union(spec: BoundedUnionSpec, index: int, piece_point: Sequence) -> list:
    """Full feasible point for :func:`build_bounded_union` from a point of piece ``index``.

    Copy ``index`` holds ``piece_point`` with ``z = 1``; the other copies are
    zero and ``t = ||x||^2``.
    """
    piece = spec.pieces[index]
    if len(piece_point) != piece.nvars:
        raise DimensionMismatch("piece point has the wrong dimension")
    offsets, t_col, z_cols = _union_layout(spec)
    point: list = [0] * (t_col + 1 + len(spec.pieces))
    xs = list(piece_point[: spec.nx])
    point[: spec.nx] = xs
    point[offsets[index] : offsets[index] + piece.nvars] = list(piece_point)
    point[t_col] = _square_norm(xs)
    point[z_cols[index]] = 1
    return point


def union_assignment_gap(spec: BoundedUnionSpec, index: int, x: Sequence) -> float:
    """Lower bound on the violation of ``x`` under the assignment ``z = e_index``.

    Under that assignment every other copy has ``||x_j||^2 <= 0``, so
    ``x_index = x`` and ``x`` must lie in piece ``index``.  For pieces with
    no auxiliary variables this is the residual of ``x`` in the piece; for a
    ball written as one Lorentz block it is the distance to the ball.
    """
    piece = spec.pieces[index]
    if piece.nvars != spec.nx:
        raise NotImplementedError("pieces with auxiliary variables need a solver")
    return eval_point(piece, list(x)).max_residual


def build_nat_union_formulation(a0: Iterable[int], bases: Iterable[int], step: int) -> MicpFormulation:
    """Formulation of ``a0 ∪ ({bases} + step*N)`` with a rotated cone ``q^2 <= eta*t``.

    Variables: ``x | x1, x2, beta_i, alpha_i, t | q, nu_i, lambda_i, eta``.
    """
    a0 = sorted(set(int(a) for a in a0))
    bases = sorted(set(int(b) for b in bases))
    if step < 1:
        raise ValueError("step must be >= 1")
    if not a0 and not bases:
        raise ValueError("the represented set would be empty")
    n, m = len(bases), len(a0)
    X, X1, X2 = 0, 1, 2
    beta = [3 + i for i in range(n)]
    alpha = [3 + n + i for i in range(m)]
    T = 3 + n + m
    Q = T + 1
    nu = [Q + 1 + i for i in range(n)]
    lam = [Q + 1 + n + i for i in range(m)]
    ETA = Q + 1 + n + m
    nvars = ETA + 1

    builder = ConicBuilder(nvars)
    zero_rows = [
        ({X: 1, X1: -1, X2: -1}, 0),
        ({X1: 1, Q: -step, **{bi: -1 for bi in beta}}, 0),
        ({X2: 1, **{ai: -1 for ai in alpha}}, 0),
    ]
    zero_rows += [({bi: 1, ni: -b}, 0) for bi, ni, b in zip(beta, nu, bases)]
    zero_rows += [({ai: 1, li: -a}, 0) for ai, li, a in zip(alpha, lam, a0)]
    zero_rows.append(({**{ni: 1 for ni in nu}, ETA: -1}, 0))
    zero_rows.append(({**{li: 1 for li in lam}, ETA: 1}, -1))
    builder.add(ZERO, zero_rows)

    binaries = nu + lam + [ETA]
    bound_rows = []
    for j in binaries:
        bound_rows += [({j: 1}, 0), ({j: -1}, 1)]
    bound_rows += [({Q: 1}, 0), ({T: 1}, 0)]
    builder.add(NONNEG, bound_rows)
    builder.add(RLORENTZ, [({ETA: 1}, 0), ({T: 1}, 0), ({Q: 1}, 0)])

    names = ["x", "x1", "x2"] + [f"beta{i}" for i in range(n)] + [f"alpha{i}" for i in range(m)] + ["t", "q"]
    names += [f"nu{i}" for i in range(n)] + [f"lambda{i}" for i in range(m)] + ["eta"]
    return MicpFormulation(1, 3 + n + m, 2 + n + m, builder.build(), tuple(names))


def nat_union_point(
    a0: Iterable[int], bases: Iterable[int], step: int, q: int, nu: Sequence[int], lam: Sequence[int], eta: int
) -> list[int]:
    """The point of :func:`build_nat_union_formulation` forced by an integer assignment.

    The equality rows determine every continuous variable except ``t``;
    ``t = q^2`` when ``eta = 1`` and ``t = 0`` otherwise is the least
    demanding choice, so the assignment has a feasible completion iff this
    point is feasible.
    """
    a0 = sorted(set(int(a) for a in a0))
    bases = sorted(set(int(b) for b in bases))
    beta = [b * v for b, v in zip(bases, nu)]
    alpha = [a * v for a, v in zip(a0, lam)]
    x1 = sum(beta) + q * step
    x2 = sum(alpha)
    t = q * q if eta else 0
    return [x1 + x2, x1, x2, *beta, *alpha, t, q, *nu, *lam, eta]


def witness_nat_union(a0: Iterable[int], bases: Iterable[int], step: int, x: int) -> list[int] | None:
    a0 = sorted(set(int(a) for a in a0))
    bases = sorted(set(int(b) for b in bases))
    zeros_nu, zeros_lam = [0] * len(bases), [0] * len(a0)
    for i, b in enumerate(bases):
        if x >= b and (x - b) % step == 0:
            nu = list(zeros_nu)
            nu[i] = 1
            return nat_union_point(a0, bases, step, (x - b) // step, nu, zeros_lam, 1)
    if x in a0:
        lam = list(zeros_lam)
        lam[a0.index(x)] = 1
        return nat_union_point(a0, bases, step, 0, zeros_nu, lam, 0)
    return None


def interval(lo, hi) -> LinConicSet:
    return set_from_rows(1, [(NONNEG, [({0: 1}, -as_fraction(lo)), ({0: -1}, as_fraction(hi))])])


def half_line(lo) -> LinConicSet:
    return set_from_rows(1, [(NONNEG, [({0: 1}, -as_fraction(lo))])])


def ball(center: Sequence, radius) -> LinConicSet:
    """Euclidean ball as a single Lorentz block ``(r, x - c)``."""
    d = len(center)
    rows = [({}, as_fraction(radius))] + [({j: 1}, -as_fraction(c)) for j, c in enumerate(center)]
    return set_from_rows(d, [(LORENTZ, rows)])


def k_epsilon(eps) -> LinConicSet:
    """``{x >= 0 : sqrt2*x1 - eps <= x2 <= sqrt2*x1 + sqrt2*eps}`` via two Lorentz blocks."""
    eps = as_fraction(eps)
    return set_from_rows(
        2,
        [
            (LORENTZ, [({1: 1}, eps), ({0: 1}, 0), ({0: 1}, 0)]),
            (LORENTZ, [({0: 2}, 2 * eps), ({1: 1}, 0), ({1: 1}, 0)]),
            (NONNEG, [({0: 1}, 0), ({1: 1}, 0)]),
        ],
    )
