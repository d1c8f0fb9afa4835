"""Wronskians and Casoratians of structured function families.

The package computes both determinants symbolically (exact rationals) or
numerically (floats), verifies the classical equality and proportionality
theorems connecting them, studies the h -> 0 limits linking differences
to derivatives, and solves (E - lambda)^m y = 0 by recovering 1-periodic
coefficient profiles from samples.
"""
from .casowronsk import (
    RatioReport,
    casoratian,
    casoratian_delta_form,
    casoratian_matrix,
    delta_power,
    difference_quotient,
    fit_convergence_order,
    ratio_sweep,
    scaled_casoratian,
    sign_agreement_step,
    wronskian,
    wronskian_matrix,
)
from .determinants import (
    ScalarMatrix,
    det_exact,
    det_float,
    vandermonde_matrix,
    vandermonde_product,
)
from .errors import (
    ArgumentError,
    CasowronError,
    DegenerateSweepError,
    DomainError,
    InconsistentInputError,
    ManifestError,
    NumericalWarning,
    NumericError,
    UnsupportedOperationError,
)
from .functions import (
    BinomExp,
    ExpPoly,
    ExpTrig,
    FunctionFamily,
    Hyperbolic,
    LinearCombo,
    Monomial,
    PolyFunction,
    Tabulated,
    binom_exp_family,
    exp_trig_exponential_form,
    exp_trig_family,
    gen_exp_poly_family,
    hyperbolic_family,
    member_polynomial,
    natural_log,
    power_family,
    transformed_family,
)
from .polynomial import Polynomial
from .scalars import EXACT, FLOAT, Rational, superfactorial
from .solver import (
    FundamentalCheck,
    PeriodicProfile,
    SolverProblem,
    SolverSolution,
    build_M,
    is_fundamental_set,
    predicted_det,
    recover_profiles,
    synthesize,
)
from .theory import (
    ClassificationVerdict,
    InvarianceReport,
    ProportionalityReport,
    TheoremCheck,
    binom_exp_asymptotic,
    check_invariance,
    classify_subset,
    proportionality_constant,
    verify_basis_equality,
    verify_binom_matrix_lemmas,
    verify_power_equality,
)

__version__ = "0.1.0"

__all__ = [
    "ArgumentError",
    "BinomExp",
    "CasowronError",
    "ClassificationVerdict",
    "DegenerateSweepError",
    "DomainError",
    "EXACT",
    "ExpPoly",
    "ExpTrig",
    "FLOAT",
    "FunctionFamily",
    "FundamentalCheck",
    "Hyperbolic",
    "InconsistentInputError",
    "InvarianceReport",
    "LinearCombo",
    "ManifestError",
    "Monomial",
    "NumericError",
    "NumericalWarning",
    "PeriodicProfile",
    "PolyFunction",
    "Polynomial",
    "ProportionalityReport",
    "RatioReport",
    "Rational",
    "ScalarMatrix",
    "SolverProblem",
    "SolverSolution",
    "Tabulated",
    "TheoremCheck",
    "UnsupportedOperationError",
    "binom_exp_asymptotic",
    "binom_exp_family",
    "build_M",
    "casoratian",
    "casoratian_delta_form",
    "casoratian_matrix",
    "check_invariance",
    "classify_subset",
    "delta_power",
    "det_exact",
    "det_float",
    "difference_quotient",
    "exp_trig_exponential_form",
    "exp_trig_family",
    "fit_convergence_order",
    "gen_exp_poly_family",
    "hyperbolic_family",
    "is_fundamental_set",
    "member_polynomial",
    "natural_log",
    "power_family",
    "predicted_det",
    "proportionality_constant",
    "ratio_sweep",
    "recover_profiles",
    "scaled_casoratian",
    "sign_agreement_step",
    "superfactorial",
    "synthesize",
    "transformed_family",
    "vandermonde_matrix",
    "vandermonde_product",
    "verify_basis_equality",
    "verify_binom_matrix_lemmas",
    "verify_power_equality",
    "wronskian",
    "wronskian_matrix",
]
