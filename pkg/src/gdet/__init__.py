"""Exact integer group determinants for SmallGroup(16,13).

The group is the central product of D8 = <X, Z> and Z4 = <Y> over <Z^2 = Y^2>.
An element of the group ring is written F = f(Z) + g(Z)X + h(Z)Y + t(Z)XY,
with the sixteen coefficients in the order a0..a3, b0..b3, c0..c3, d0..d3.
"""

from .errors import InvariantViolation
from .groups import (
    GroupRingElement,
    GroupSpec,
    build_group,
    cayley_matrix,
    convolve,
    delta,
    determinant_exact,
    group_determinant,
    multiply,
)
from .frobenius import (
    CoefficientTuple,
    FactoredDeterminant,
    GaussianInt,
    char_product_M,
    compute_UV,
    element_from_tuple,
    factored_determinant,
    gaussian_eval,
    rep2_det,
    sign_point_values,
    tuple_from_element,
)
from .classification import (
    AchievabilityResult,
    FactorizationError,
    FactorizationResult,
    brute_force_scan,
    factor_pair_search,
    factorize,
    is_achievable,
)
from .witnesses import FAMILIES, NotAchievable, WitnessRecipe, base_polynomials, witness, witness_for
from .identities import (
    AuxSums,
    EllQuadruple,
    EmQuadruple,
    GreekVector,
    aux_sums,
    check_identities,
    ell_values,
    em_values,
    greek_vector,
)


__all__ = [name for name in dir() if not name.startswith("_")]
