import pytest

from corpus import prism_n, tetra, torus, trap
from cellcx.boundary import (
    LEFT,
    RIGHT,
    GeometricSequence,
    canonical_maps,
    check_geometric_sequence,
    collar,
    midsection,
    relation_check,
    relative_report,
    transition,
)
from cellcx.complex import boundary, boundary_components, empty_complex, local_figure, restriction
from cellcx.errors import JunctionViolation, NotASubcomplex, ShapeMismatch
from cellcx.generators import bitetra, cycle, halving_map
from cellcx.morphisms import check_collapse, check_reduction, find_isomorphism, identity_map, is_isomorphism


def ends(K):
    """Boundary components ordered largest first."""
    return sorted(boundary_components(K), key=lambda c: -len(c.cells))


def test_collar_examples():
    T = tetra()
    col = collar(T, {0})
    assert sorted(len(c) for c in col) == [2, 2, 2, 3, 3, 3]
    assert collar(T, T.vertex_set()) == ()
    P = prism_n(4)
    bottom = boundary_components(P)[0]
    col = collar(P, bottom.vertex_set())
    assert sorted(P.rank(c) for c in col) == [1] * 4 + [2] * 4


def test_midsection_of_prism():
    P = prism_n(4)
    M, E = midsection(P, boundary_components(P)[0])
    assert find_isomorphism(M, cycle(4)) is not None
    assert set(E) == set(collar(P, boundary_components(P)[0].vertex_set()))
    for x, m in E.items():
        assert M.rank(m) == P.rank(x) - 1


def test_midsection_over_vertex_star_is_local_figure():
    T = tetra()
    v = frozenset([0])
    M, _ = midsection(T, restriction(T, v))
    assert M == local_figure(T, v)
    assert find_isomorphism(M, cycle(3)) is not None


def test_midsection_needs_subcomplex():
    with pytest.raises(NotASubcomplex):
        midsection(prism_n(4), cycle(3))


def test_transition_of_prism():
    P = prism_n(4)
    J = boundary_components(P)[0]
    tr = transition(P, J)
    assert find_isomorphism(tr.complex, cycle(4)) is not None
    J0 = J.vertex_set()
    assert all(w == x & J0 for x, w in tr.reduced.items())


def test_transition_of_trapezoid_wide_end():
    S = trap()
    wide, narrow = ends(S)
    assert len(wide.vertices) == 8
    assert find_isomorphism(transition(S, wide).complex, cycle(4)) is not None
    assert find_isomorphism(transition(S, narrow).complex, cycle(4)) is not None


def test_relative_report_prism():
    P = prism_n(4)
    rep = relative_report(P, boundary_components(P)[0])
    assert rep.uniform and rep.local_relative and rep.exactly_collared
    assert rep.non_degenerate and rep.pure_relative and rep.uniformity_U and rep.transition_in_B


def test_relative_report_bitetra_boundary_is_degenerate():
    B = bitetra()
    rep = relative_report(B, boundary(B))
    assert not rep.non_degenerate
    tops = B.maximal_cells()
    assert rep.witnesses["non_degenerate"] == tops[0] & tops[1]


@pytest.mark.parametrize("K", [prism_n(4), bitetra(), tetra(), torus()], ids=["prism", "bitetra", "tetra", "torus"])
def test_relative_report_with_empty_part(K):
    rep = relative_report(K, empty_complex())
    assert rep.exactly_collared and rep.local_relative


def test_canonical_maps_prism():
    P = prism_n(4)
    for J in boundary_components(P):
        rho, pi = canonical_maps(P, J)
        assert is_isomorphism(rho) and is_isomorphism(pi)


def test_canonical_maps_trapezoid():
    S = trap()
    wide, narrow = ends(S)
    rho, pi = canonical_maps(S, wide)
    assert check_reduction(rho).passed and not is_isomorphism(rho)
    assert rho.domain.f_vector() == (8, 8) and rho.codomain.f_vector() == (4, 4)
    # same fiber shape as the halving map: two edges and one vertex over each edge
    assert sorted(len(rho.fiber(e)) for e in rho.codomain.cells_of_rank(1)) == [3] * 4
    assert is_isomorphism(pi)
    rho, pi = canonical_maps(S, narrow)
    assert is_isomorphism(rho) and is_isomorphism(pi)
    assert check_collapse(pi).passed


def test_relations_of_isomorphisms():
    C = cycle(4)
    rep = relation_check(identity_map(C), identity_map(C))
    assert rep.compatible.holds and rep.reflective.holds and rep.orthogonal.holds


def test_slice_collapses_are_orthogonal():
    from cellcx.slices import slice_to_sequence

    for S in (prism_n(4), trap()):
        seq = slice_to_sequence(S)
        assert relation_check(seq.pi_J, seq.pi_L).orthogonal.holds


def test_trapezoid_reduction_compatible_with_collapse():
    S = trap()
    rho, pi = canonical_maps(S, ends(S)[0])
    rep = relation_check(rho, pi)
    assert rep.compatible.holds
    assert rep.reflective.status == "n/a"


def test_halving_not_reflective_with_itself():
    h = halving_map(4)
    verdict = relation_check(h, h).reflective
    assert not verdict.holds and verdict.clause == "existence"


def test_relation_needs_shared_end():
    with pytest.raises(ShapeMismatch):
        relation_check(identity_map(cycle(4)), identity_map(cycle(5)))


def slice_geometric(K):
    from cellcx.slices import slice_to_sequence

    s = slice_to_sequence(K)
    return GeometricSequence(
        s.complexes(),
        [(s.rho_J, RIGHT), (s.pi_J, LEFT), (s.pi_L, RIGHT), (s.rho_L, LEFT)],
    )


def test_prism_slice_sequence_is_geometric():
    assert check_geometric_sequence(slice_geometric(prism_n(4))) == ["compatible", "orthogonal", "compatible"]


def test_dual_of_prism_sequence_is_geometric():
    check_geometric_sequence(slice_geometric(prism_n(4)), check_dual=True)


def test_connecting_sequence_of_two_prisms():
    P = prism_n(4)
    J = boundary_components(P)[1]
    rho, pi = canonical_maps(P, J)
    seq = GeometricSequence(
        [pi.domain, rho.codomain, J, rho.codomain, pi.domain],
        [(pi, RIGHT), (rho, LEFT), (rho, RIGHT), (pi, LEFT)],
    )
    assert check_geometric_sequence(seq) == ["compatible", "reflective", "compatible"]


def test_geometric_sequence_rejects_bad_junctions():
    h = halving_map(4)
    C8 = h.domain
    seq = GeometricSequence([h.codomain, C8, h.codomain], [(h, LEFT), (h, RIGHT)])
    with pytest.raises(JunctionViolation):
        check_geometric_sequence(seq)
    seq = GeometricSequence([C8, h.codomain, C8], [(h, RIGHT), (h, RIGHT)])
    with pytest.raises(JunctionViolation):
        check_geometric_sequence(seq)
