from .builders import (
    WitnessInfeasible,
    ball,
    build_bounded_union,
    build_nat_union_formulation,
    conic_hull,
    half_line,
    interval,
    k_epsilon,
    nat_union_point,
    union_assignment_gap,
    witness_bounded_union,
    witness_nat_union,
)
from .decompose import Decomposition, MultiplierInvalid, decompose_point
from .evaluate import DEFAULT_TOLERANCE, FeasReport, eval_point
from .milprep import MatchReport, Window, milprep_window_check
from .sets import (
    CONE_KINDS,
    LORENTZ,
    NONNEG,
    RLORENTZ,
    ZERO,
    BoundedUnionSpec,
    ConeBlock,
    ConicBuilder,
    DimensionMismatch,
    LinConicSet,
    MicpFormulation,
    set_from_rows,
)
from .text import IrrationalData, emit_conic_text, parse_conic_text
