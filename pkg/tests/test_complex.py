from itertools import combinations

import pytest

import oracles
from corpus import closed_corpus, prism_n, rank_dict, tetra, torus
from cellcx import TOP
from cellcx.complex import (
    CellComplex,
    boundary,
    boundary_components,
    build_complex,
    classify,
    empty_complex,
    incidence,
    join_meet,
    local_figure,
    restriction,
    skeleton,
)
from cellcx.errors import (
    AxiomViolation,
    CellNotInComplex,
    DuplicateCell,
    EmptyCellError,
    MaximalCellHasNoFigure,
    MissingSingleton,
    RankOfMinimalNonZero,
    UnknownVertex,
)
from cellcx.generators import bitetra, cycle, path, wedge_tetra
from cellcx.morphisms import find_isomorphism


def cells(*specs):
    return [(frozenset(v), r) for v, r in specs]


def test_tetra_from_raw_cells():
    raw = [({v}, 0) for v in range(4)]
    raw += [(set(e), 1) for e in combinations(range(4), 2)]
    raw += [(set(t), 2) for t in combinations(range(4), 3)]
    K = build_complex(raw)
    assert len(K.cells) == 14 and K.max_rank == 2


def test_two_faces_sharing_two_edges_violate_iii():
    # two squares sharing the edges ab and bc; their intersection abc is no cell
    raw = cells(*[({v}, 0) for v in "abcde"],
                ({"a", "b"}, 1), ({"b", "c"}, 1), ({"c", "d"}, 1), ({"d", "a"}, 1),
                ({"c", "e"}, 1), ({"e", "a"}, 1),
                ({"a", "b", "c", "d"}, 2), ({"a", "b", "c", "e"}, 2))
    with pytest.raises(AxiomViolation) as exc:
        build_complex(raw)
    assert exc.value.axiom == "iii"


def test_triangle_without_edges_violates_ii():
    raw = cells(({"u"}, 0), ({"v"}, 0), ({"w"}, 0), ({"u", "v", "w"}, 2))
    with pytest.raises(AxiomViolation) as exc:
        build_complex(raw)
    assert exc.value.axiom == "ii"


def test_rank_not_increasing_violates_i():
    raw = cells(({1}, 0), ({2}, 0), ({1, 2}, 0))
    with pytest.raises(AxiomViolation) as exc:
        build_complex(raw)
    assert exc.value.axiom == "i"


def test_diamond_violation():
    # a 2-cell over a vertex with only one edge between them
    raw = cells(({1}, 0), ({2}, 0), ({3}, 0), ({1, 2}, 1), ({2, 3}, 1), ({1, 2, 3}, 2))
    with pytest.raises(AxiomViolation) as exc:
        build_complex(raw)
    assert exc.value.axiom == "iv"


@pytest.mark.parametrize("raw,err", [
    (cells(({1, 2}, 1), ({1}, 0)), MissingSingleton),
    (cells(({1}, 1)), RankOfMinimalNonZero),
    (cells(({1}, 0), ({1}, 0)), DuplicateCell),
    (cells((set(), 0)), EmptyCellError),
])
def test_construction_errors(raw, err):
    with pytest.raises(err):
        build_complex(raw)


def test_incidence():
    T = tetra()
    tri = next(c for c in T.cells if len(c) == 3)
    inc = incidence(T, tri)
    assert len(inc.faces) == 3 and not inc.cofaces
    assert tri in inc.above and tri in inc.below and len(inc.below) == 7
    v = next(c for c in T.cells if len(c) == 1)
    inc = incidence(T, v)
    assert not inc.faces and len(inc.cofaces) == 3
    G = torus()
    e = G.cells_of_rank(1)[0]
    assert len(G.faces(e)) == 2 and len(G.cofaces(e)) == 2
    with pytest.raises(CellNotInComplex):
        incidence(T, frozenset({"nope"}))


def test_boundary_examples():
    dP = boundary(path(1))
    assert dP.f_vector() == (2,) and dP.max_rank == 0
    assert not boundary(tetra()).cells
    comps = boundary_components(prism_n(4))
    assert len(comps) == 2
    for c in comps:
        assert find_isomorphism(c, cycle(4)) is not None


def test_restriction_examples():
    T = tetra()
    tri = next(c for c in T.cells if len(c) == 3)
    R = restriction(T, tri)
    assert len(R.cells) == 7 and list(R.maximal_cells()) == [tri]
    assert restriction(T, T.vertex_set()) == T
    G = torus()
    sq = G.cells_of_rank(2)[0]
    assert restriction(G, sq).f_vector() == (4, 4, 1)
    with pytest.raises(UnknownVertex):
        restriction(T, {"zz"})


def test_skeleton_examples():
    T = tetra()
    assert skeleton(T, 1).f_vector() == (4, 6)
    assert skeleton(T, 5) == T
    assert skeleton(torus(), 1).f_vector() == (12, 24)
    S = skeleton(T, 1)
    assert skeleton(S, 1) == S


def test_classify_tetra():
    rep = classify(tetra())
    assert rep.closed and rep.in_B and rep.simplicial and rep.simple
    assert rep.boundary_components == ()


def test_classify_wedge_has_pinch():
    K = wedge_tetra()
    rep = classify(K)
    assert rep.closed and not rep.non_pinching and not rep.in_C
    assert len(rep.pinch_cells) == 1 and len(rep.pinch_cells[0]) == 1
    (v,) = rep.pinch_cells[0]
    # the pinched vertex lies in both tetrahedra
    tops = [z for z in K.maximal_cells() if v in z]
    assert len({frozenset(z) - {v} for z in tops}) == 6


def test_classify_bitetra():
    rep = classify(bitetra())
    assert rep.in_C and not rep.closed and len(rep.boundary_components) == 1


def test_classify_empty_complex():
    rep = classify(empty_complex())
    assert rep.closed and not rep.in_B


def test_classify_invariants_on_corpus():
    for _, K in closed_corpus() + [("prism", prism_n(4)), ("bitetra", bitetra())]:
        rep = classify(K)
        assert rep.in_C == (rep.non_singular and rep.non_pinching and rep.local
                            and rep.pure and rep.graph_based)
        assert rep.in_B == (rep.in_C and rep.closed)
        if rep.closed:
            assert rep.boundary_components == ()
        if rep.non_pinching:
            assert not boundary(boundary(K)).cells


def test_local_figures():
    T = tetra()
    v = frozenset([0])
    assert find_isomorphism(local_figure(T, v), cycle(3)) is not None
    G = torus()
    assert find_isomorphism(local_figure(G, G.cells_of_rank(0)[0]), cycle(4)) is not None
    with pytest.raises(MaximalCellHasNoFigure):
        local_figure(T, T.maximal_cells()[0])


def test_local_figure_of_prism_vertical_edge():
    # the literal midsection over B(x): one vertex per horizontal edge at
    # either end, one edge per square, so two disjoint edges
    P = prism_n(4)
    comps = boundary_components(P)
    bottom, top = comps[0].vertex_set(), comps[1].vertex_set()
    vert = next(e for e in P.cells_of_rank(1) if e & bottom and e & top)
    F = local_figure(P, vert)
    assert F.f_vector() == (4, 2)
    assert len(oracles.components(F.vertex_set(), F.cells_of_rank(1))) == 2


def test_join_meet_examples():
    T = tetra()
    a, b = frozenset([0]), frozenset([1])
    jm = join_meet(T, a, b)
    assert jm.meet is None or jm.meet == frozenset()
    assert jm.join == frozenset([0, 1])
    e1, e2 = frozenset([0, 1]), frozenset([2, 3])
    assert join_meet(T, e1, e2).join is TOP
    for x in T.cells:
        for y in T.above(x):
            jm = join_meet(T, x, y)
            assert jm.meet == x and jm.join == y


def test_join_is_least_upper_bound():
    for K in (tetra(), torus(), prism_n(4)):
        r = rank_dict(K)
        for x in K.cells:
            for y in K.cells:
                ups = [z for z in r if x | y <= z]
                j = K.join(x, y)
                if not ups:
                    assert j is TOP
                else:
                    least = [z for z in ups if all(z <= w for w in ups)]
                    assert [j] == least


def test_diamond_property_holds_on_corpus():
    for _, K in closed_corpus():
        r = rank_dict(K)
        assert oracles.axiom_verdict(r) == "valid"


def test_cofaces_meet_to_cell():
    for _, K in closed_corpus():
        for x in K.cells:
            up = K.cofaces(x)
            if len(up) >= 2:
                assert frozenset.intersection(*up) == x


def test_two_cells_have_cyclic_boundary():
    for K in (tetra(), torus(), prism_n(5)):
        for x in K.cells_of_rank(2):
            edges = K.faces(x)
            deg = {}
            for e in edges:
                for v in e:
                    deg[v] = deg.get(v, 0) + 1
            assert set(deg.values()) == {2}
            assert len(oracles.components(x, edges)) == 1


def test_complexes_compare_by_content():
    T = tetra()
    again = CellComplex(rank_dict(T))
    assert again == T and hash(again) == hash(T)
