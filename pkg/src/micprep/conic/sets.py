"""Convex sets written as ``{u : A u - b in K}`` for a product cone ``K``."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from ..qsqrt2 import ScalarQ2

ZERO = "zero"
NONNEG = "nonneg"
LORENTZ = "lorentz"
RLORENTZ = "rlorentz"
CONE_KINDS = (ZERO, NONNEG, LORENTZ, RLORENTZ)
_MIN_SIZE = {ZERO: 1, NONNEG: 1, LORENTZ: 1, RLORENTZ: 2}


class DimensionMismatch(ValueError):
    pass


@dataclass(frozen=True)
class ConeBlock:
    """Rows ``start .. start+size-1`` lie in one cone.

    ``lorentz`` rows are ``(t, x_1..x_k)`` with ``||x|| <= t``;
    ``rlorentz`` rows are ``(s, t, w_1..w_k)`` with ``||w||^2 <= s*t``, ``s, t >= 0``.
    """

    kind: str
    start: int
    size: int

    def __post_init__(self):
        if self.kind not in CONE_KINDS:
            raise ValueError(f"unknown cone kind {self.kind!r}")
        if self.size < _MIN_SIZE[self.kind]:
            raise ValueError(f"{self.kind} block needs at least {_MIN_SIZE[self.kind]} rows")

    @property
    def rows(self) -> range:
        return range(self.start, self.start + self.size)


@dataclass(frozen=True)
class LinConicSet:
    nvars: int
    A: tuple[tuple[ScalarQ2, ...], ...]
    b: tuple[ScalarQ2, ...]
    blocks: tuple[ConeBlock, ...]

    def __post_init__(self):
        if len(self.A) != len(self.b):
            raise DimensionMismatch("A and b have different row counts")
        for row in self.A:
            if len(row) != self.nvars:
                raise DimensionMismatch(f"row of length {len(row)} in a set over {self.nvars} variables")
        pos = 0
        for blk in self.blocks:
            if blk.start != pos:
                raise ValueError("cone blocks must partition the rows in order")
            pos += blk.size
        if pos != len(self.b):
            raise ValueError("cone blocks must cover every row")

    @property
    def nrows(self) -> int:
        return len(self.b)

    @property
    def is_rational(self) -> bool:
        return all(c.is_rational for row in self.A for c in row) and all(c.is_rational for c in self.b)

    def to_json(self) -> dict:
        return {
            "nvars": self.nvars,
            "A": [[c.to_json() for c in row] for row in self.A],
            "b": [c.to_json() for c in self.b],
            "blocks": [{"kind": k.kind, "start": k.start, "size": k.size} for k in self.blocks],
        }

    @classmethod
    def from_json(cls, data: dict) -> "LinConicSet":
        return cls(
            int(data["nvars"]),
            tuple(tuple(ScalarQ2.from_json(c) for c in row) for row in data["A"]),
            tuple(ScalarQ2.from_json(c) for c in data["b"]),
            tuple(ConeBlock(k["kind"], int(k["start"]), int(k["size"])) for k in data["blocks"]),
        )


class ConicBuilder:
    """Accumulates cone blocks row by row.

    Each row is a sparse mapping ``{variable index: coefficient}`` plus a
    constant; the row value is ``sum(coef * u[j]) + const``.
    """

    def __init__(self, nvars: int):
        self.nvars = nvars
        self._A: list[tuple[ScalarQ2, ...]] = []
        self._b: list[ScalarQ2] = []
        self._blocks: list[ConeBlock] = []

    def add(self, kind: str, rows: Sequence[tuple[Mapping[int, object], object]]) -> None:
        block = ConeBlock(kind, len(self._b), len(rows))
        for coeffs, const in rows:
            dense = [ScalarQ2(0)] * self.nvars
            for j, c in coeffs.items():
                if not 0 <= j < self.nvars:
                    raise DimensionMismatch(f"variable index {j} out of range")
                dense[j] = dense[j] + ScalarQ2.coerce(c)
            self._A.append(tuple(dense))
            # stored as A u - b, so the constant goes in with a flipped sign
            self._b.append(-ScalarQ2.coerce(const))
        self._blocks.append(block)

    def extend(self, other: LinConicSet, columns: Sequence[int], homog: int | None = None) -> None:
        """Copy ``other``'s blocks, mapping its variable ``k`` to ``columns[k]``.

        With ``homog`` set, the constant is multiplied by that variable
        instead (the conic-hull lift).
        """
        if len(columns) != other.nvars:
            raise DimensionMismatch("column map does not match the set's variables")
        for blk in other.blocks:
            rows = []
            for r in blk.rows:
                coeffs = {columns[k]: c for k, c in enumerate(other.A[r]) if c != 0}
                if homog is None:
                    rows.append((coeffs, -other.b[r]))
                else:
                    if other.b[r] != 0:
                        coeffs[homog] = coeffs.get(homog, ScalarQ2(0)) - other.b[r]
                    rows.append((coeffs, 0))
            self.add(blk.kind, rows)

    def build(self) -> LinConicSet:
        return LinConicSet(self.nvars, tuple(self._A), tuple(self._b), tuple(self._blocks))


@dataclass(frozen=True)
class MicpFormulation:
    """``proj_x(body ∩ (R^(nx+ny) × Z^nz))`` with variables ordered ``x, y, z``."""

    nx: int
    ny: int
    nz: int
    body: LinConicSet
    names: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        if self.nx + self.ny + self.nz != self.body.nvars:
            raise DimensionMismatch("nx + ny + nz must equal the body's variable count")
        if self.names and len(self.names) != self.body.nvars:
            raise DimensionMismatch("one name per variable")

    @property
    def nvars(self) -> int:
        return self.body.nvars

    @property
    def integer_vars(self) -> range:
        return range(self.nx + self.ny, self.nvars)

    def var_name(self, j: int) -> str:
        if self.names:
            return self.names[j]
        if j < self.nx:
            return f"x{j}"
        if j < self.nx + self.ny:
            return f"y{j - self.nx}"
        return f"z{j - self.nx - self.ny}"

    def to_json(self) -> dict:
        out = {"nx": self.nx, "ny": self.ny, "nz": self.nz, "body": self.body.to_json()}
        if self.names:
            out["names"] = list(self.names)
        return out

    @classmethod
    def from_json(cls, data: dict) -> "MicpFormulation":
        return cls(
            int(data["nx"]),
            int(data["ny"]),
            int(data["nz"]),
            LinConicSet.from_json(data["body"]),
            tuple(data.get("names", ())),
        )


@dataclass(frozen=True)
class BoundedUnionSpec:
    """Pieces ``T_i`` over ``(x, y_i)``; the first ``nx`` variables of each are ``x``.

    ``witnesses[i]`` is a point of ``T_i`` certifying it is nonempty.
    """

    nx: int
    pieces: tuple[LinConicSet, ...]
    witnesses: tuple[tuple, ...]

    def __post_init__(self):
        if not self.pieces:
            raise ValueError("a bounded union needs at least one piece")
        if len(self.witnesses) != len(self.pieces):
            raise ValueError("one witness point per piece")
        for t in self.pieces:
            if t.nvars < self.nx:
                raise DimensionMismatch("every piece must contain the x variables")


def set_from_rows(nvars: int, blocks: Iterable[tuple[str, Sequence[tuple[Mapping[int, object], object]]]]) -> LinConicSet:
    builder = ConicBuilder(nvars)
    for kind, rows in blocks:
        builder.add(kind, rows)
    return builder.build()
