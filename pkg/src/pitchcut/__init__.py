"""Exact cutting planes for min-knapsack covering problems.

Everything computes over rationals: normalization, the pitch-1/pitch-2
separation oracle, knapsack-cover cuts and their rounding step, the
fixed-support separation LP, an exact simplex, the cutting-plane loop,
and the instance generators behind the integrality-gap experiments.
The hot dynamic programs sit behind pitchcut.kernels, which prefers
the compiled extension and falls back to pure Python.
"""

from .core import (
    FAMILIES,
    BudgetExceededError,
    Inequality,
    InfeasibleInstanceError,
    Instance,
    KnapsackError,
    Pitch2Canonical,
    compute_pitch,
    format_cut,
    is_valid,
    kc_inequality,
    make_inequality,
    natural_row,
    normalize,
    pitch2_canonical,
    pitch2_split,
    pitch_reduce,
    reduce_maxknap,
)
from .cutloop import CutPool, GapReport, LoopConfig, RoundResult, round_kc, run
from .gaplab import (
    ExperimentRow,
    ParseError,
    RawInstance,
    experiment_gap_table,
    gen_lemma4,
    gen_ola,
    gen_pitch3_wild,
    gen_random,
    lemma4_point,
    ola_point,
    parse_instance,
    serialize_instance,
    write_gap_table,
)
from .kernels import HAVE_SPEEDUPS
from .knapdp import (
    DEFAULT_BUDGET,
    KnapSolution,
    solve_exact,
    solve_fptas,
    solve_Palpha,
)
from .ratlp import LPModel, LPSolution, solve_lp
from .sep import (
    Certified,
    FixedSupportQuery,
    FixedSupportResult,
    Violated,
    enumerate_pitch1,
    enumerate_pitch2,
    implied_by,
    separate_fixed_support,
    separate_kc,
    separate_pitch12,
)

__version__ = "0.1.0"

__all__ = [
    "BudgetExceededError",
    "Certified",
    "CutPool",
    "DEFAULT_BUDGET",
    "ExperimentRow",
    "FAMILIES",
    "FixedSupportQuery",
    "FixedSupportResult",
    "GapReport",
    "HAVE_SPEEDUPS",
    "Inequality",
    "InfeasibleInstanceError",
    "Instance",
    "KnapSolution",
    "KnapsackError",
    "LPModel",
    "LPSolution",
    "LoopConfig",
    "ParseError",
    "Pitch2Canonical",
    "RawInstance",
    "RoundResult",
    "Violated",
    "compute_pitch",
    "enumerate_pitch1",
    "enumerate_pitch2",
    "experiment_gap_table",
    "format_cut",
    "gen_lemma4",
    "gen_ola",
    "gen_pitch3_wild",
    "gen_random",
    "implied_by",
    "is_valid",
    "kc_inequality",
    "lemma4_point",
    "make_inequality",
    "natural_row",
    "normalize",
    "ola_point",
    "parse_instance",
    "pitch2_canonical",
    "pitch2_split",
    "pitch_reduce",
    "reduce_maxknap",
    "round_kc",
    "run",
    "separate_fixed_support",
    "separate_kc",
    "separate_pitch12",
    "serialize_instance",
    "solve_Palpha",
    "solve_exact",
    "solve_fptas",
    "solve_lp",
    "write_gap_table",
]
