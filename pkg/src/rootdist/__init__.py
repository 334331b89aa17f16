"""Roots of polynomial congruences mod n, degree-one ideal data, and
equidistribution diagnostics: exponential sums, discrepancy, digit towers."""

from .errors import (
    AdmissibilityError,
    InvalidArgumentError,
    ResourceLimitError,
    RootdistError,
    UnsupportedInputError,
)
from .intpoly import IntPolynomial, parse_polynomial, poly_eval_mod, polynomial_to_text
from .modarith import (
    Factorization,
    SpfSieve,
    build_spf_sieve,
    crt_pair,
    factorize,
    inverse,
    is_prime,
)
from .fppoly import poly_gcd_mod_p, poly_powmod
from .roots import (
    LiftTree,
    ModulusFilter,
    RootSet,
    hensel_lift_level,
    lift_tree,
    root_count,
    root_stream,
    roots_from_factorization,
    roots_mod_n,
    roots_mod_prime,
    roots_mod_prime_power,
)
from .ideals import (
    AdmissibilityReport,
    FactoredIdeal,
    InertiaDegree,
    admissibility,
    enumerate_degree_one,
    ideal_from_root,
    ideal_residue,
    inertia_degree,
    is_degree_one,
    merge_coprime,
)
from .equidist import (
    BoundCheck,
    DiscrepancyReport,
    HSpec,
    PrimeStats,
    ProgressionSums,
    WeylSeries,
    box_discrepancy,
    decades,
    dilated_sum_square_bound,
    prime_stats,
    progression_root_sums,
    ratio_points,
    root_exp_sum,
    root_exp_sum_factored,
    split_prime_count,
    star_discrepancy,
    weyl_series,
)
from .nadic import (
    ExpansionEvidence,
    NadicExpansion,
    NormalityReport,
    haar_monte_carlo,
    nadic_expansions,
    normality_evidence,
    prefix_weyl_sum,
    word_frequencies,
)
from .systems import (
    JointWeylSeries,
    PolySystem,
    TupleRootSet,
    default_hset,
    joint_exp_sum,
    joint_exp_sum_factored,
    joint_weyl_series,
    root_tuples,
    validate_system,
)

__version__ = "0.1.0"

__all__ = [
    "AdmissibilityError",
    "AdmissibilityReport",
    "BoundCheck",
    "DiscrepancyReport",
    "ExpansionEvidence",
    "FactoredIdeal",
    "Factorization",
    "HSpec",
    "InertiaDegree",
    "IntPolynomial",
    "InvalidArgumentError",
    "JointWeylSeries",
    "LiftTree",
    "ModulusFilter",
    "NadicExpansion",
    "NormalityReport",
    "PolySystem",
    "PrimeStats",
    "ProgressionSums",
    "ResourceLimitError",
    "RootSet",
    "RootdistError",
    "SpfSieve",
    "TupleRootSet",
    "UnsupportedInputError",
    "WeylSeries",
    "admissibility",
    "box_discrepancy",
    "build_spf_sieve",
    "crt_pair",
    "decades",
    "default_hset",
    "dilated_sum_square_bound",
    "enumerate_degree_one",
    "factorize",
    "haar_monte_carlo",
    "hensel_lift_level",
    "ideal_from_root",
    "ideal_residue",
    "inertia_degree",
    "inverse",
    "is_degree_one",
    "is_prime",
    "joint_exp_sum",
    "joint_exp_sum_factored",
    "joint_weyl_series",
    "lift_tree",
    "merge_coprime",
    "nadic_expansions",
    "normality_evidence",
    "parse_polynomial",
    "poly_eval_mod",
    "poly_gcd_mod_p",
    "poly_powmod",
    "polynomial_to_text",
    "prefix_weyl_sum",
    "prime_stats",
    "progression_root_sums",
    "ratio_points",
    "root_count",
    "root_exp_sum",
    "root_exp_sum_factored",
    "root_stream",
    "root_tuples",
    "roots_from_factorization",
    "roots_mod_n",
    "roots_mod_prime",
    "roots_mod_prime_power",
    "split_prime_count",
    "star_discrepancy",
    "validate_system",
    "weyl_series",
    "word_frequencies",
]
