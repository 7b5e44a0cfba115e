"""Volume-type invariants for numerical cycle classes on products of projective spaces."""

from .bounds import (
    BoundReport,
    ContinuityNeighborhood,
    PerrinEstimate,
    ci_points_p3,
    continuity_neighborhood,
    largest_valid_dyadic_c,
    mc_divisor_exact,
    mc_family_dim_bound,
    mc_upper_generic,
    mc_upper_nonbig,
    mc_upper_precise,
    minimal_s,
    mob_ci_lower,
    mob_ci_lower_estimate,
    mob_level_upper,
    perrin_bound,
    section_growth_constant,
)
from .constants import DegenerateRecursionError, epsilon, tau
from .cycles import (
    CycleClass,
    DivisorClass,
    VarietySpec,
    degree,
    divisor_power,
    h0,
    intersect,
    is_big,
    is_nef_class,
    is_pseudoeffective,
    multinomial,
    pair_with_divisor_power,
    vol_divisor,
)
from .powerprod import PowerProduct
from .seshadri import (
    SeshadriEstimate,
    WmcEnvelope,
    seshadri_interval,
    wmc_upper,
    wmc_upper_precise,
    wmob_ci_bounds,
    wmob_ci_relative_gap,
    wmob_divisor,
)
from .volhat import (
    DualityGap,
    KtResult,
    OptimizationResult,
    kt_check,
    verify_sup_feasibility,
    volhat_curve_xiao,
    volhat_homogeneity_check,
    volhat_sup,
    weak_duality_check,
)

__version__ = "0.1.0"

__all__ = [
    "BoundReport",
    "ContinuityNeighborhood",
    "CycleClass",
    "DegenerateRecursionError",
    "DivisorClass",
    "DualityGap",
    "KtResult",
    "OptimizationResult",
    "PerrinEstimate",
    "PowerProduct",
    "SeshadriEstimate",
    "VarietySpec",
    "WmcEnvelope",
    "ci_points_p3",
    "continuity_neighborhood",
    "degree",
    "divisor_power",
    "epsilon",
    "h0",
    "intersect",
    "is_big",
    "is_nef_class",
    "is_pseudoeffective",
    "kt_check",
    "largest_valid_dyadic_c",
    "mc_divisor_exact",
    "mc_family_dim_bound",
    "mc_upper_generic",
    "mc_upper_nonbig",
    "mc_upper_precise",
    "minimal_s",
    "mob_ci_lower",
    "mob_ci_lower_estimate",
    "mob_level_upper",
    "multinomial",
    "pair_with_divisor_power",
    "perrin_bound",
    "section_growth_constant",
    "seshadri_interval",
    "tau",
    "verify_sup_feasibility",
    "vol_divisor",
    "volhat_curve_xiao",
    "volhat_homogeneity_check",
    "volhat_sup",
    "weak_duality_check",
    "wmc_upper",
    "wmc_upper_precise",
    "wmob_ci_bounds",
    "wmob_ci_relative_gap",
    "wmob_divisor",
]
