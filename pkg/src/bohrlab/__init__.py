"""Certified Bohr-type radii for planar harmonic mappings.

Library layout:

* :mod:`bohrlab.series`: interval-certified series evaluation
* :mod:`bohrlab.classes`: the three harmonic classes as data
* :mod:`bohrlab.radii`: Q-functions and certified root brackets
* :mod:`bohrlab.verify`: theorem functionals, sharpness, fuzzing
* :mod:`bohrlab.cli`: the ``bohrlab`` command line
"""

from .classes import (
    ClassParams,
    GkH,
    HarmonicModel,
    TildeG0H,
    W0H,
    boundary_distance_lower,
    coeff_bound_sum,
    extremal_model,
    growth_envelope,
    identity_model,
)
from .errors import (
    BohrLabError,
    MismatchedVariant,
    NoBracket,
    NonContracting,
    NotAlternating,
    NotConvex,
    OutOfRange,
    SignAmbiguous,
)
from .radii import (
    T31,
    T32,
    T33,
    T34,
    T35,
    T36,
    TA,
    RadiusProblem,
    RootResult,
    problem_class,
    q_value,
    solve_q1_closed_form,
    solve_radius,
)
from .series import Enclosure, TermRule, eval_alternating, eval_alternating_convex, eval_tail_bounded
from .verify import (
    FuzzSummary,
    Status,
    Verdict,
    area_ratio,
    bohr_sum,
    check_theorem,
    fuzz_campaign,
    membership_spot_check,
    modulus_sup,
    sample_admissible_model,
    sharpness_detail,
    sharpness_gap,
    theorem_b_functional,
)

__version__ = "0.1.0"

__all__ = [
    "BohrLabError", "ClassParams", "Enclosure", "FuzzSummary", "GkH",
    "HarmonicModel", "MismatchedVariant", "NoBracket", "NonContracting",
    "NotAlternating", "NotConvex", "OutOfRange", "RadiusProblem",
    "RootResult", "SignAmbiguous", "Status", "T31", "T32", "T33", "T34",
    "T35", "T36", "TA", "TermRule", "TildeG0H", "Verdict", "W0H",
    "area_ratio", "bohr_sum", "boundary_distance_lower", "check_theorem",
    "coeff_bound_sum", "eval_alternating", "eval_alternating_convex",
    "eval_tail_bounded", "extremal_model", "fuzz_campaign",
    "growth_envelope", "identity_model", "membership_spot_check",
    "modulus_sup", "problem_class", "q_value", "sample_admissible_model",
    "sharpness_detail", "sharpness_gap", "solve_q1_closed_form",
    "solve_radius", "theorem_b_functional",
]
