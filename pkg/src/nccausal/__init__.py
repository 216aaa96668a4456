"""Causal order between states on noncommutative spacetime models.

Three models over flat 1+1 spacetime share one notion of causality between
states.  Two almost commutative models come with closed-form predicates: a
two-level internal algebra whose sphere of pure states carries an internal
speed limit, and a two-sheeted spacetime whose crossing bound reproduces the
half-period of the trembling motion of a free Dirac fermion.  The third is
a truncated matrix model of the Moyal plane, with coherent states ordered by
a displacement cone and an operator-level verifier that certifies causal
functions by negative semidefiniteness and hunts for witnesses refuting a
claimed causal order.
"""

__version__ = "0.1.0"

from .spacetime import (
    NATURAL_UNITS,
    SI_UNITS,
    CausalCurve,
    EventPoint,
    FieldEvaluationError,
    ScalarField,
    UnitSystem,
    is_causal,
    lorentzian_distance,
    maximize_weighted_proper_time,
    proper_time,
    weighted_proper_time,
)
from .verdict import CausalVerdict
from .almost_m2 import (
    FiniteDiracM2,
    InternalStateS2,
    ProductStateM2,
    azimuth_gap,
    causally_related_m2,
    internal_speed_bound,
    min_proper_time_m2,
)
from .two_sheet import (
    FiniteDiracTwoSheet,
    SheetState,
    causally_related_sheets,
    causally_related_sheets_higgs,
    cross_sheet_bound_natural,
    cross_sheet_bound_seconds,
    zitterbewegung_period,
)
from .moyal import (
    FockVector,
    GeneralizedCoherentState,
    MoyalElement,
    MoyalParams,
    TruncationError,
    coherent_causal,
    coherent_state,
    coordinate_elements,
    eval_state,
    generalized_coherent_causal,
    level_jump_bound,
    space_element,
    star_product_matrix,
    time_element,
    translate,
    wigner_basis_eval,
)
from .verifier import (
    FLAT_GAMMAS,
    CausalWitness,
    GammaConventions,
    TruncatedOperator,
    assemble_jda,
    derivative_matrices,
    find_violation,
    is_causal_element,
)

__all__ = [
    "__version__",
    # spacetime
    "EventPoint",
    "CausalCurve",
    "ScalarField",
    "FieldEvaluationError",
    "UnitSystem",
    "SI_UNITS",
    "NATURAL_UNITS",
    "is_causal",
    "lorentzian_distance",
    "proper_time",
    "weighted_proper_time",
    "maximize_weighted_proper_time",
    # shared verdict
    "CausalVerdict",
    # almost commutative, 2x2 internal algebra
    "InternalStateS2",
    "ProductStateM2",
    "FiniteDiracM2",
    "azimuth_gap",
    "internal_speed_bound",
    "min_proper_time_m2",
    "causally_related_m2",
    # two-sheeted model
    "SheetState",
    "FiniteDiracTwoSheet",
    "causally_related_sheets",
    "causally_related_sheets_higgs",
    "zitterbewegung_period",
    "cross_sheet_bound_seconds",
    "cross_sheet_bound_natural",
    # Moyal plane
    "MoyalParams",
    "MoyalElement",
    "FockVector",
    "GeneralizedCoherentState",
    "TruncationError",
    "wigner_basis_eval",
    "star_product_matrix",
    "coordinate_elements",
    "time_element",
    "space_element",
    "eval_state",
    "coherent_state",
    "translate",
    "coherent_causal",
    "level_jump_bound",
    "generalized_coherent_causal",
    # operator verifier
    "GammaConventions",
    "FLAT_GAMMAS",
    "TruncatedOperator",
    "CausalWitness",
    "derivative_matrices",
    "assemble_jda",
    "is_causal_element",
    "find_violation",
]
