"""Finite left restriction monoids, matched pairs, supported actions and [E|M]-sets."""

from .actions import (
    Exponential,
    SupportedAction,
    box_product,
    check_action,
    check_action_hom,
    check_boolean_supported,
    check_supported,
    curry,
    disjoint_union,
    enumerate_actions,
    enumerate_homs,
    eval_map,
    exponential,
    principal_action,
    projection_action,
    uncurry,
)
from .core import (
    AxiomReport,
    BooleanAlgebra,
    FiniteMonoid,
    NoWitness,
    Partition,
    SearchLimitExceeded,
    Semilattice,
    StructureError,
    check_boolean_algebra,
    check_monoid,
    check_semilattice,
)
from .em_sets import (
    EMSet,
    check_em_set,
    exponential_point_transport,
    from_action,
    roundtrip_action_iso,
    roundtrip_em_iso,
    to_action,
    w_interpolate,
)
from .etale import (
    InverseView,
    NotEtale,
    check_boolean_inverse_monoid,
    check_category_iso,
    extend_action,
    inverse_view,
    is_etale,
    partial_units,
    restrict_action,
)
from .formats import ParseError, fixture, generate, parse, serialize
from .generators import boolean_as_lrm, powerset, pt, sym_inv, trivial_plus
from .matched_pair import (
    MatchedPair,
    build_lrm,
    check_pair,
    from_lrm,
    reconstruction_iso,
)
from .restriction import (
    LRM,
    BooleanLRM,
    LeftRestrictionMonoid,
    NotBoolean,
    NotFactorizable,
    as_boolean,
    check_boolean_lrm,
    check_lrm,
)

__version__ = "0.1.0"
