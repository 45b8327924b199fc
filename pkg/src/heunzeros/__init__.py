"""Accessory-parameter coefficient polynomials of Heun-class equations:
exact recurrence builds, zero finding and tracking, perturbative zero
expansions, and connection-coefficient estimates."""

from .families import (
    EtaBMap,
    FamilyKind,
    InvalidSpecError,
    LameParams,
    MathieuParams,
    RecurrenceSpec,
    WhittakerHillParams,
    from_lame,
    from_mathieu,
    from_whittaker_hill,
    recurrence_coeffs,
)
from .oracle import (
    MidpointMatch,
    ResonantExponentError,
    SeriesSolution,
    d2_by_midpoint_matching,
    family_ode_polys,
    local_solutions_at_1,
    ode_residual,
    series_solution,
    z1_swapped_spec,
)
from .perturbation import (
    BoundaryOrderError,
    DegenerateGridError,
    PerturbativeExpansion,
    first_order_coeff,
    lame_expansion,
    perturbative_seeds,
    reduced_confluent_expansion,
    second_order_coeff,
    zero_estimate,
    zero_expansion,
)
from .recurrence import (
    DensePolynomial,
    PolynomialFamily,
    build_family,
    eval_s_polynomial,
    eval_sequence,
)
from .rootfind import (
    NonConvergenceError,
    ZeroSet,
    find_all_roots,
    newton_polygon_seeds,
    real_zero_count,
    refine_root,
)
from .scalars import EXACT_FIELD, FieldTag, QQi, bigfloat_field, parse_gaussian_rational
from .tracking import (
    ConvergenceReport,
    D2Estimate,
    D2ZeroResult,
    MatchResult,
    ZeroTrack,
    convergence_report,
    d2_closed_form_s0,
    d2_sequence,
    d2_zero_search,
    match_zeros,
    min_grid_gap,
    solve_zeros,
    stabilized_digits,
)

__version__ = "0.1.0"

__all__ = [
    "EtaBMap",
    "FamilyKind",
    "InvalidSpecError",
    "LameParams",
    "MathieuParams",
    "RecurrenceSpec",
    "WhittakerHillParams",
    "from_lame",
    "from_mathieu",
    "from_whittaker_hill",
    "recurrence_coeffs",
    "DensePolynomial",
    "PolynomialFamily",
    "build_family",
    "eval_s_polynomial",
    "eval_sequence",
    "MidpointMatch",
    "ResonantExponentError",
    "SeriesSolution",
    "d2_by_midpoint_matching",
    "family_ode_polys",
    "local_solutions_at_1",
    "ode_residual",
    "series_solution",
    "z1_swapped_spec",
    "BoundaryOrderError",
    "DegenerateGridError",
    "PerturbativeExpansion",
    "first_order_coeff",
    "lame_expansion",
    "perturbative_seeds",
    "reduced_confluent_expansion",
    "second_order_coeff",
    "zero_estimate",
    "zero_expansion",
    "NonConvergenceError",
    "ZeroSet",
    "find_all_roots",
    "newton_polygon_seeds",
    "real_zero_count",
    "refine_root",
    "EXACT_FIELD",
    "FieldTag",
    "QQi",
    "bigfloat_field",
    "parse_gaussian_rational",
    "ConvergenceReport",
    "D2Estimate",
    "D2ZeroResult",
    "MatchResult",
    "ZeroTrack",
    "convergence_report",
    "d2_closed_form_s0",
    "d2_sequence",
    "d2_zero_search",
    "match_zeros",
    "min_grid_gap",
    "solve_zeros",
    "stabilized_digits",
    "__version__",
]
