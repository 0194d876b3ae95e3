"""Coefficient bounds for Hohlov-operator classes of bi-univalent functions.

Truncated power series, the Hohlov convolution operator, the class
P_m(beta) with its integral criterion, closed-form ``|a_2|``/``|a_3|``
bounds, and a brute-force feasibility oracle that checks them.
"""

from .bounds import (
    BoundReport,
    corollary_bounds,
    k_class_bounds,
    s_class_bounds,
    theorem31_bounds,
    theorem41_bounds,
)
from .classes import (
    ClassParams,
    MembershipReport,
    PmMeasure,
    coefficient_bound_check,
    inverse_transforms,
    k_transform,
    lemma21_check,
    membership_check,
    pm_generate,
    pm_integral,
    s_transform,
)
from .errors import (
    BetaOutOfRange,
    BiunivalentError,
    CompositionRequiresZeroConstant,
    DegenerateDenominator,
    DivisionBySingularSeries,
    NoFeasibleSample,
    ParameterError,
)
from .extremal import (
    FeasibilityTuple,
    SearchReport,
    a3_branch_consistency,
    extremal_search,
    feasibility_map_k,
    feasibility_map_s,
)
from .hypergeom import (
    HohlovParams,
    bernardi_apply,
    gauss_2f1_series,
    hohlov_apply,
    named_operator,
    phi_n,
    phi_sequence,
    pochhammer,
)
from .series import (
    NormalizedFunction,
    TruncatedSeries,
    compose,
    differentiate,
    div,
    eval_at,
    hadamard,
    mul,
    revert,
)

__version__ = "0.1.0"
