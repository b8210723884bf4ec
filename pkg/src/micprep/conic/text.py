"""Line-oriented text format for MICP formulations with rational data.

::

    MICP 1
    VARS <nx> <ny> <nz>
    ROWS <m>
    VAR <j> <name> <continuous|integer>      one line per variable
    CONE <kind> <start> <size>                one line per block, in row order
    A <row> <col> <p/q>                       nonzeros, row-major
    B <row> <p/q>                             nonzero constants
    END

Rows read ``A u - b``.  Output is byte-identical for identical input.
"""
from __future__ import annotations

from fractions import Fraction

from ..qsqrt2 import ScalarQ2
from .sets import ConeBlock, LinConicSet, MicpFormulation


class IrrationalData(ValueError):
    pass


def _lit(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def emit_conic_text(f: MicpFormulation) -> str:
    body = f.body
    if not body.is_rational:
        raise IrrationalData("text format holds rational coefficients only")
    lines = ["MICP 1", f"VARS {f.nx} {f.ny} {f.nz}", f"ROWS {body.nrows}"]
    for j in range(f.nvars):
        kind = "integer" if j in f.integer_vars else "continuous"
        lines.append(f"VAR {j} {f.var_name(j)} {kind}")
    for blk in body.blocks:
        lines.append(f"CONE {blk.kind} {blk.start} {blk.size}")
    for r, row in enumerate(body.A):
        for c, coef in enumerate(row):
            if coef != 0:
                lines.append(f"A {r} {c} {_lit(coef.u)}")
    for r, coef in enumerate(body.b):
        if coef != 0:
            lines.append(f"B {r} {_lit(coef.u)}")
    lines.append("END")
    return "\n".join(lines) + "\n"


def parse_conic_text(text: str) -> MicpFormulation:
    lines = [ln.split() for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0] != ["MICP", "1"]:
        raise ValueError("missing 'MICP 1' header")
    if lines[-1] != ["END"]:
        raise ValueError("missing END")
    nx = ny = nz = nrows = None
    names: dict[int, str] = {}
    blocks = []
    entries = []
    consts = {}
    for parts in lines[1:-1]:
        tag = parts[0]
        if tag == "VARS":
            nx, ny, nz = map(int, parts[1:4])
        elif tag == "ROWS":
            nrows = int(parts[1])
        elif tag == "VAR":
            names[int(parts[1])] = parts[2]
        elif tag == "CONE":
            blocks.append(ConeBlock(parts[1], int(parts[2]), int(parts[3])))
        elif tag == "A":
            entries.append((int(parts[1]), int(parts[2]), Fraction(parts[3])))
        elif tag == "B":
            consts[int(parts[1])] = Fraction(parts[2])
        else:
            raise ValueError(f"unknown line tag {tag!r}")
    if None in (nx, ny, nz, nrows):
        raise ValueError("VARS and ROWS lines are required")
    nvars = nx + ny + nz
    A = [[ScalarQ2(0)] * nvars for _ in range(nrows)]
    for r, c, q in entries:
        A[r][c] = ScalarQ2(q)
    b = tuple(ScalarQ2(consts.get(r, 0)) for r in range(nrows))
    body = LinConicSet(nvars, tuple(tuple(row) for row in A), b, tuple(blocks))
    name_tuple = tuple(names[j] for j in range(nvars)) if len(names) == nvars else ()
    return MicpFormulation(nx, ny, nz, body, name_tuple)
