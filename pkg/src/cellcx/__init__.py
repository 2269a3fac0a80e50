"""Combinatorial cell complexes, their duals, reductions and collapses, slices,
cobordisms, and the causal category built from them."""

from .complex import (
    TOP,
    CellComplex,
    PropertyReport,
    boundary,
    boundary_components,
    build_complex,
    classify,
    components,
    empty_complex,
    incidence,
    is_closed,
    join_meet,
    local_figure,
    restriction,
    skeleton,
)
from .duality import bdual_set, double_dual_isomorphism, dual_complex, dual_map, dual_set
from .morphisms import (
    CcMap,
    barycentric_subdivision,
    check_collapse,
    check_homomorphism,
    check_reduction,
    compose,
    find_isomorphism,
    identity_map,
    isomorphic,
)
from .boundary import (
    GeometricSequence,
    canonical_maps,
    check_geometric_sequence,
    collar,
    midsection,
    relation_check,
    relative_report,
    transition,
)
from .slices import SliceSequence, check_slice, relative_subdivide, sequence_to_slice, slice_to_sequence
from .cobordism import Cobordism, Glue, compose_cobordisms, dual_cobordism, empty_cobordism, make_cobordism
from .category import (
    State,
    StateSequence,
    apply_functor,
    compose_sequences,
    connecting_between,
    make_state,
    realize,
    state_of_slice,
)
from .generators import generate
from . import kernels

__version__ = "0.1.0"
