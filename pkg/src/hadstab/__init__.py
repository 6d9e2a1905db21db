"""Schur stability of Hadamard products and powers of complex polynomials.

The package decides exact stability through a certified root finder, applies
coefficient-based sufficient and necessary criteria, computes the power
thresholds beyond which every coefficient-wise power is stable (or provably
unstable), and ships a CLI that reproduces the built-in numerical
experiments.
"""

from .criteria import (
    CriterionId,
    CriterionOutcome,
    SimplexWeights,
    necessary_condition,
    satisfies_stability_condition,
    sharpness_witness,
    stabilizing_partner,
    synthesize_witness,
    theorem3_check,
)
from .errors import (
    BracketError,
    HadstabError,
    InvalidInputError,
    MarginalZoneError,
    NotApplicableError,
    NumericalError,
    UnconvergedError,
    UnsupportedDegreeError,
    UnsupportedInputError,
)
from .poly import (
    BranchSet,
    FractionalPolynomial,
    MonicPolynomial,
    RationalExponent,
    all_ones,
    conjugate,
    hadamard_power,
    hadamard_product,
    principal_power,
    real_form,
    szego_product,
    szego_weight,
    to_integer_order,
)
from .roots import (
    BOUNDARY_BAND,
    RootSet,
    StabilityVerdict,
    Status,
    branch_set_stable,
    find_roots,
    fujiwara_bound,
    is_schur_stable,
)
from .thresholds import (
    HalfLine,
    Kind,
    KStarResult,
    Method,
    ThresholdResult,
    auto_onset,
    beta_star,
    exact_onset,
    guardian_map,
    guardian_onset,
    kstar_test,
    pstar_exact,
    pstar_grid,
)

__version__ = "0.1.0"

__all__ = [
    "BOUNDARY_BAND",
    "BracketError",
    "BranchSet",
    "CriterionId",
    "CriterionOutcome",
    "FractionalPolynomial",
    "HadstabError",
    "HalfLine",
    "InvalidInputError",
    "Kind",
    "KStarResult",
    "MarginalZoneError",
    "Method",
    "MonicPolynomial",
    "NotApplicableError",
    "NumericalError",
    "RationalExponent",
    "RootSet",
    "SimplexWeights",
    "StabilityVerdict",
    "Status",
    "ThresholdResult",
    "UnconvergedError",
    "UnsupportedDegreeError",
    "UnsupportedInputError",
    "all_ones",
    "auto_onset",
    "beta_star",
    "branch_set_stable",
    "conjugate",
    "exact_onset",
    "find_roots",
    "fujiwara_bound",
    "guardian_map",
    "guardian_onset",
    "hadamard_power",
    "hadamard_product",
    "is_schur_stable",
    "kstar_test",
    "necessary_condition",
    "principal_power",
    "pstar_exact",
    "pstar_grid",
    "real_form",
    "satisfies_stability_condition",
    "sharpness_witness",
    "stabilizing_partner",
    "synthesize_witness",
    "szego_product",
    "szego_weight",
    "theorem3_check",
    "to_integer_order",
]
