"""Analysis toolkit for constant-length substitutions.

Builds the minimal direct- and reverse-reading automata generating a
substitution's two-sided fixed point, computes its transformation semigroup
and ell-kernel, and, for coincidence substitutions, decides which indices of
the fixed point are periodic versus aperiodic — everything cross-validated
against a brute-force oracle.
"""

from .automata import (
    Dfao,
    EquivalenceResult,
    SemigroupAutomaton,
    build_direct,
    build_reverse_semigroup,
    equivalent,
    minimize,
    reverse_and_determinize,
)
from .digits import DigitString, digit_length, pad, to_digits, to_int
from .errors import (
    BadAlphabet,
    BadBase,
    BadSeed,
    DigitOutOfRange,
    IndexOutOfWindow,
    InputError,
    InvariantViolation,
    NoNegativeSide,
    NonCanonical,
    NontrivialHeight,
    NotToeplitz,
    Overflow,
    Refusal,
    RuleLengthMismatch,
    SeedMissing,
    StateExplosion,
    SubstratumError,
    UnknownLetter,
    WindowTooShort,
)
from .kernel import (
    BruteForceKernel,
    KernelElement,
    brute_force_kernel,
    brute_force_kernel_for,
    enumerate_kernel,
)
from .oracle import Window, expand, sample_progression, window_for_range
from .semigroup import (
    GradedReachability,
    LengthSet,
    SemigroupClosure,
    StructureSemigroup,
    closure,
    graded_reachability,
    min_rank,
    structure_semigroup,
)
from .substitution import Alphabet, ColumnMap, Substitution, validate
from .toeplitz import (
    CycleInfo,
    PeriodicityVerdict,
    RangeReport,
    ReducedGraph,
    aperiodic_in_range,
    decide_per,
    per_k_window,
    reduced_graph,
)

__version__ = "0.1.0"

__all__ = [
    "Alphabet",
    "ColumnMap",
    "Substitution",
    "validate",
    "DigitString",
    "to_digits",
    "to_int",
    "pad",
    "digit_length",
    "Dfao",
    "SemigroupAutomaton",
    "EquivalenceResult",
    "build_direct",
    "build_reverse_semigroup",
    "reverse_and_determinize",
    "minimize",
    "equivalent",
    "SemigroupClosure",
    "StructureSemigroup",
    "GradedReachability",
    "LengthSet",
    "closure",
    "graded_reachability",
    "structure_semigroup",
    "min_rank",
    "KernelElement",
    "BruteForceKernel",
    "enumerate_kernel",
    "brute_force_kernel",
    "brute_force_kernel_for",
    "Window",
    "expand",
    "window_for_range",
    "sample_progression",
    "PeriodicityVerdict",
    "RangeReport",
    "ReducedGraph",
    "CycleInfo",
    "decide_per",
    "aperiodic_in_range",
    "per_k_window",
    "reduced_graph",
    "SubstratumError",
    "InputError",
    "BadAlphabet",
    "UnknownLetter",
    "RuleLengthMismatch",
    "BadSeed",
    "BadBase",
    "NonCanonical",
    "DigitOutOfRange",
    "SeedMissing",
    "Overflow",
    "StateExplosion",
    "Refusal",
    "NotToeplitz",
    "NontrivialHeight",
    "WindowTooShort",
    "IndexOutOfWindow",
    "NoNegativeSide",
    "InvariantViolation",
]
