"""S-integral points on affine curves via intersection theory and p-adic analysis.

Modules:

* ``padic``      finite-precision p-adic numbers, series, Strassmann counts
* ``modeldata``  per-prime regular-model fibre descriptions and validation
* ``dintersect`` exact intersection-theoretic maps on fibre data
* ``selmer``     reduction types, rank formulas, condition checks
* ``hyperell``   even-degree hyperelliptic curves and tiny integrals
* ``chabauty``   annihilating differentials, disc sweeps, point-count bounds
* ``cli``        command-line front end
"""

from .padic import (
    NewtonPolygon,
    PadicNumber,
    PadicSeries,
    StrassmannResult,
    hensel_sqrt,
    iwasawa_log,
    newton_bound_mplus1,
    series_antiderivative,
    strassmann_zero_count,
)
from .modeldata import (
    BasePointData,
    FibreData,
    NumberFieldInvariants,
    check_d_transversal,
    good_reduction_fibre,
    liu_star_checks,
    parse_curve_file,
    parse_fibre_file,
    serialize_fibre,
)
from .dintersect import (
    LocalConstraintSet,
    VElement,
    compute_phi,
    constraint_subset,
    generalised_inverse,
    local_constraint_set,
    phi_dot_dtilde,
    sigma_principal,
)
from .selmer import (
    ReductionType,
    chabauty_condition,
    chabauty_condition_uniform,
    enumerate_reduction_types,
    ker_sigma_rank,
    ros_condition,
    selmer_rank,
    selmer_set_rank_report,
)
from .hyperell import (
    HyperellipticCurve,
    ResidueDisc,
    brute_force_integral_points,
    count_affine_points,
    cusp_invariants,
    disc_expand_differential,
    reduce_and_order,
    tiny_integral,
)
from .chabauty import (
    ChabautyFunction,
    PeriodMatrix,
    annihilating_differential,
    bound_fixed_type,
    bound_general,
    bound_improved,
    bound_sharp_hyperelliptic,
    load_alpha_fixture,
    rho_series_on_disc,
    strassmann_sweep,
)

__all__ = [
    "BasePointData",
    "ChabautyFunction",
    "FibreData",
    "HyperellipticCurve",
    "LocalConstraintSet",
    "NewtonPolygon",
    "NumberFieldInvariants",
    "PadicNumber",
    "PadicSeries",
    "PeriodMatrix",
    "ReductionType",
    "ResidueDisc",
    "StrassmannResult",
    "VElement",
    "annihilating_differential",
    "bound_fixed_type",
    "bound_general",
    "bound_improved",
    "bound_sharp_hyperelliptic",
    "brute_force_integral_points",
    "chabauty_condition",
    "chabauty_condition_uniform",
    "check_d_transversal",
    "compute_phi",
    "constraint_subset",
    "count_affine_points",
    "cusp_invariants",
    "disc_expand_differential",
    "enumerate_reduction_types",
    "generalised_inverse",
    "good_reduction_fibre",
    "hensel_sqrt",
    "iwasawa_log",
    "ker_sigma_rank",
    "liu_star_checks",
    "load_alpha_fixture",
    "local_constraint_set",
    "newton_bound_mplus1",
    "parse_curve_file",
    "parse_fibre_file",
    "phi_dot_dtilde",
    "reduce_and_order",
    "rho_series_on_disc",
    "ros_condition",
    "selmer_rank",
    "selmer_set_rank_report",
    "serialize_fibre",
    "series_antiderivative",
    "sigma_principal",
    "strassmann_sweep",
    "strassmann_zero_count",
    "tiny_integral",
]

__version__ = "0.1.0"
