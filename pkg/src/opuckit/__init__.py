"""opuckit: desk-scale checks for the single-critical-point higher-order
Szego sum-rule calculus on the unit circle.

Layers, bottom up: Verblunsky sequences and the difference calculus
(sequences), measure transforms and the weighted log functional (measures),
exact shift-variable Laurent algebra with diagonal-ideal membership
(shift_algebra), difference normal forms and telescoping bookkeeping
(normal_form), the computable sum-rule pieces (sum_rule), the quartic PSD
Gram block (psd_quartic), interpolation exponent budgets (absorption), and
the sweep CLI (cli).
"""

__version__ = "0.1.0"

from ._kernels import BACKEND as KERNEL_BACKEND
from .absorption import (
    GNExponent,
    HolderBudget,
    absorption_inequality_probe,
    fit_absorption_constant,
    gn_exponent,
    gn_ratio_probe,
    holder_budget,
)
from .families import FamilySpec
from .measures import (
    MeasureSpec,
    MomentPositivityError,
    SzegoFunctionalValue,
    WeightPositivityError,
    bernstein_szego_weight,
    szego_functional,
    szego_functional_taylor,
    szego_recursion_polynomials,
    trig_moments,
    verblunsky_from_moments,
)
from .normal_form import (
    MembershipError,
    NormalFormMonomial,
    TelescopeTerm,
    evaluate,
    from_ideal_expansion,
    leibniz_expand,
    pointwise_equality_check,
    summation_by_parts,
    telescope_sum,
)
from .psd_quartic import (
    GramBlock,
    PsdCertificate,
    gram_closed_form,
    gram_identity_check,
    gram_quadrature,
    multi_indices,
    pm_polynomial,
    psd_certificate,
    raw_m2_failure_exhibit,
)
from .rationals import GaussianRational
from .sequences import (
    EnergyReport,
    ModulusError,
    VerblunskySequence,
    forward_difference,
    lp_norm,
    lukic_partial_sums,
)
from .shift_algebra import (
    IdealDecomposition,
    IdealTerm,
    MomentQuery,
    ShiftPolynomial,
    coefficient_map,
    diag_eval,
    euler_moment,
    ideal_power_decompose,
    vanishing_order,
)
from .sum_rule import (
    DecompositionReport,
    HmSymbol,
    constant_part_check,
    decomposition_report,
    difference_energy,
    hm_closed_form,
    hm_fourier,
    hm_shift_symbol,
    log_tail,
    quadratic_form,
)
