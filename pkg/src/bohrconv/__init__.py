"""Bohr radii and Bohr-Bombieri functions of Hadamard convolution operators.

The package computes closed-form Bohr radii (full and fixed-coefficient)
for the identity, derivative, antiderivative and lacunary convolution
pairs, two-sided bounds where only bounds are known, profile and
hypergeometric radii, and the convergence-radius upper bound -- and checks
all of them against independent numerical oracles: sampled suprema over
admissible functions, quadratic coefficient inequalities, and the
subordination / majorization majorant comparisons.
"""

from .bohr import (
    CESARO_BOUND_LIMIT,
    RadiusResult,
    bombieri_derivative_with_a,
    bombieri_hypotheses,
    bombieri_id0,
    bombieri_id0_with_a,
    bombieri_integral_with_a,
    bombieri_lacunary_with_a,
    bombieri_value,
    cesaro_bombieri_bound,
    convergence_radius_bound,
    integral_r_of_a,
    integral_threshold,
    pair_bombieri,
    profile_radius,
    radius_derivative_pair,
    radius_derivative_pair_with_a,
    radius_hypergeometric,
    radius_id0,
    radius_integral_lower,
    radius_integral_upper,
    radius_integral_with_a,
    radius_lacunary_with_a,
    radius_with_coefficient,
    shift_pair_lower_bound,
)
from .exceptions import (
    BohrError,
    BracketError,
    DomainError,
    NoRootError,
    NotApplicableError,
    NotInvertibleError,
    OpenProblemError,
    ValidityError,
)
from .kernels import (
    CoKWitness,
    InfRatio,
    Kernel,
    KernelPair,
    OperatorSpec,
    apply_operator,
    cesaro,
    derivative_kernel,
    derivative_pair,
    dilation_kernel,
    geometric_kernel,
    hadamard_kernel,
    hadamard_sum,
    hypergeometric_kernel,
    id0_pair,
    identity_spec,
    inf_ratio,
    integral_kernel,
    integral_pair,
    lacunary_gap_kernel,
    lacunary_pair,
    operator_from_json,
    operator_to_json,
    pair_sum,
    polynomial_kernel,
    radius_of_convergence,
    shift_kernel,
    support_gap,
)
from .series import (
    DEFAULT_ORDER,
    ORDER_ENV,
    TruncatedSeries,
    compose,
    default_order,
    disc_automorphism,
    from_coeffs,
    geometric_series,
    hadamard,
    monomial,
    multiply,
    zero_series,
)
from .specfun import (
    HypergeometricParams,
    dilog,
    gauss_value,
    hypergeometric_coeffs,
    lambert_w,
    pochhammer,
)
from .verify import (
    BlaschkeSample,
    BombieriSampler,
    CheckReport,
    SuiteReport,
    builtin_pairs,
    check_goluzin,
    check_lemma,
    check_majorization_majorant,
    check_subordination_majorant,
    empirical_bombieri,
    inverse_operator,
    random_schwarz,
    run_all_suites,
    run_goluzin_suite,
    run_lemma_suite,
    run_majorization_suite,
    run_oracle_suite,
    run_sharpness_suite,
    run_subordination_suite,
)

__version__ = "0.1.0"

__all__ = [
    "BlaschkeSample",
    "BohrError",
    "BombieriSampler",
    "BracketError",
    "CESARO_BOUND_LIMIT",
    "CheckReport",
    "CoKWitness",
    "DEFAULT_ORDER",
    "DomainError",
    "HypergeometricParams",
    "InfRatio",
    "Kernel",
    "KernelPair",
    "NoRootError",
    "NotApplicableError",
    "NotInvertibleError",
    "OpenProblemError",
    "OperatorSpec",
    "ORDER_ENV",
    "RadiusResult",
    "SuiteReport",
    "TruncatedSeries",
    "ValidityError",
    "apply_operator",
    "bombieri_derivative_with_a",
    "bombieri_hypotheses",
    "bombieri_id0",
    "bombieri_id0_with_a",
    "bombieri_integral_with_a",
    "bombieri_lacunary_with_a",
    "bombieri_value",
    "builtin_pairs",
    "cesaro",
    "cesaro_bombieri_bound",
    "check_goluzin",
    "check_lemma",
    "check_majorization_majorant",
    "check_subordination_majorant",
    "compose",
    "convergence_radius_bound",
    "default_order",
    "derivative_kernel",
    "derivative_pair",
    "dilation_kernel",
    "dilog",
    "disc_automorphism",
    "empirical_bombieri",
    "from_coeffs",
    "gauss_value",
    "geometric_kernel",
    "geometric_series",
    "hadamard",
    "hadamard_kernel",
    "hadamard_sum",
    "hypergeometric_coeffs",
    "hypergeometric_kernel",
    "id0_pair",
    "identity_spec",
    "inf_ratio",
    "integral_kernel",
    "integral_pair",
    "integral_r_of_a",
    "integral_threshold",
    "inverse_operator",
    "lacunary_gap_kernel",
    "lacunary_pair",
    "lambert_w",
    "monomial",
    "multiply",
    "operator_from_json",
    "operator_to_json",
    "pair_bombieri",
    "pair_sum",
    "pochhammer",
    "polynomial_kernel",
    "profile_radius",
    "radius_derivative_pair",
    "radius_derivative_pair_with_a",
    "radius_hypergeometric",
    "radius_id0",
    "radius_integral_lower",
    "radius_integral_upper",
    "radius_integral_with_a",
    "radius_lacunary_with_a",
    "radius_of_convergence",
    "radius_with_coefficient",
    "random_schwarz",
    "run_all_suites",
    "run_goluzin_suite",
    "run_lemma_suite",
    "run_majorization_suite",
    "run_oracle_suite",
    "run_sharpness_suite",
    "run_subordination_suite",
    "shift_kernel",
    "shift_pair_lower_bound",
    "support_gap",
    "zero_series",
]
