"""romanoff-lab: exact desk-scale computation of totient-ratio moment sums,
Romanoff-type representation counts, elliptic-curve order statistics, and
the empirical constants of the inequalities that tie them together.

The usual entry points:

    from romanoff_lab import build_sieve, PrimeList, totient
    from romanoff_lab import moment_sum, theorem1_report
    from romanoff_lab import representation_counts, theorem6_report
"""

from .elliptic import (
    EllipticCurve,
    OrderSequence,
    congruence_class_census,
    count_points,
    hasse_margin,
    legendre_symbol,
    order_sequence,
    theorem5_report,
)
from .errors import (
    CapacityError,
    ConstructionError,
    DomainError,
    ParameterError,
    RangeError,
)
from .extremal import AlphaSweepEntry, ExtremalSet, alpha_sweep, construct_extremal_set
from .lemmas import (
    GammaValue,
    MinPkSum,
    PrimeLogPowerSums,
    abel_check,
    incomplete_gamma,
    min_pk_sum,
    prime_log_power_sums,
)
from .moments import (
    MomentReport,
    PolynomialSpec,
    delta_L,
    delta_moment_report,
    lemma1_product,
    lemma2_check,
    lemma2_product_table,
    lemma3_report,
    moment_sum,
    omega_count,
    poly_moment_report,
    theorem1_report,
)
from .romanoff import (
    ConstantEstimate,
    OrderDistribution,
    RepresentationProfile,
    cauchy_schwarz_holds,
    density_count,
    konyagin_ratio,
    multiplicative_order,
    order_distribution,
    order_weighted_sum,
    representation_counts,
    root_count,
    schnirelmann_pi2,
    second_moment,
    theorem6_report,
    theorem9_report,
)
from .sequences import (
    EllipticOrders,
    Explicit,
    Geometric,
    Polynomial,
    PowerTower,
    SequenceSpec,
    congruence_pair_sum,
    count_terms,
    doubling_ratio,
    enumerate_terms,
    format_sequence_spec,
    max_multiplicity,
    parse_sequence_spec,
    term_multiplicity,
)
from .sieve import (
    FactorSieve,
    MertensProducts,
    PrimeList,
    build_sieve,
    chebyshev_theta,
    is_prime,
    is_squarefree,
    mertens_products,
    nu,
    p_minus,
    p_plus,
    totient,
    totient_ratio,
    totient_table,
)
from .verify import verify_all

__version__ = "0.1.0"

__all__ = [
    "AlphaSweepEntry",
    "CapacityError",
    "ConstantEstimate",
    "ConstructionError",
    "DomainError",
    "EllipticCurve",
    "EllipticOrders",
    "Explicit",
    "ExtremalSet",
    "FactorSieve",
    "GammaValue",
    "Geometric",
    "MertensProducts",
    "MinPkSum",
    "MomentReport",
    "OrderDistribution",
    "OrderSequence",
    "ParameterError",
    "Polynomial",
    "PolynomialSpec",
    "PowerTower",
    "PrimeList",
    "PrimeLogPowerSums",
    "RangeError",
    "RepresentationProfile",
    "SequenceSpec",
    "abel_check",
    "alpha_sweep",
    "build_sieve",
    "cauchy_schwarz_holds",
    "chebyshev_theta",
    "congruence_class_census",
    "congruence_pair_sum",
    "construct_extremal_set",
    "count_points",
    "count_terms",
    "delta_L",
    "delta_moment_report",
    "density_count",
    "doubling_ratio",
    "enumerate_terms",
    "format_sequence_spec",
    "hasse_margin",
    "incomplete_gamma",
    "is_prime",
    "is_squarefree",
    "konyagin_ratio",
    "legendre_symbol",
    "lemma1_product",
    "lemma2_check",
    "lemma2_product_table",
    "lemma3_report",
    "max_multiplicity",
    "mertens_products",
    "min_pk_sum",
    "moment_sum",
    "multiplicative_order",
    "nu",
    "omega_count",
    "order_distribution",
    "order_sequence",
    "order_weighted_sum",
    "p_minus",
    "p_plus",
    "parse_sequence_spec",
    "poly_moment_report",
    "prime_log_power_sums",
    "representation_counts",
    "root_count",
    "schnirelmann_pi2",
    "second_moment",
    "term_multiplicity",
    "theorem1_report",
    "theorem5_report",
    "theorem6_report",
    "theorem9_report",
    "totient",
    "totient_ratio",
    "totient_table",
    "verify_all",
]
