import pytest

import oracles
from corpus import closed_corpus, prism_n, rank_dict, tetra, torus
from cellcx import TOP
from cellcx.complex import boundary
from cellcx.duality import bdual_set, double_dual_isomorphism, dual_complex, dual_map, dual_set
from cellcx.errors import EmptySet, NotClosed, NotInC, UnknownVertex
from cellcx.generators import bitetra, cycle, halving_map, path, wedge_tetra
from cellcx.morphisms import barycentric_subdivision, check_collapse, find_isomorphism, identity_map


def test_dual_set_examples():
    T = tetra()
    assert len(dual_set(T, {0})) == 3
    assert all(0 in z for z in dual_set(T, {0}))
    assert dual_set(T, T.vertex_set()) == frozenset()
    G = torus()
    e = G.cells_of_rank(1)[0]
    assert len(dual_set(G, e)) == 2
    with pytest.raises(UnknownVertex):
        dual_set(T, {"x"})


def test_dual_set_matches_oracle():
    for _, K in closed_corpus():
        expected = oracles.dual_sets(rank_dict(K))
        for x in K.cells:
            assert dual_set(K, x) == expected[x]


@pytest.mark.parametrize("n", range(3, 9))
def test_cycle_self_dual(n):
    D, forward = dual_complex(cycle(n))
    assert find_isomorphism(D, cycle(n)) is not None
    for x in cycle(n).cells:
        assert D.rank(forward[x]) == 1 - cycle(n).rank(x)


def test_dual_vertices_number_maximal_cells():
    T = tetra()
    D, forward = dual_complex(T)
    tops = T.maximal_cells()
    assert D.vertex_set() == frozenset(range(len(tops)))
    for k, z in enumerate(tops):
        assert forward[z] == frozenset([k])
    assert dual_complex(T)[0] == D


def test_dual_preconditions():
    with pytest.raises(NotClosed):
        dual_complex(prism_n(4))
    with pytest.raises(NotInC):
        dual_complex(wedge_tetra())


@pytest.mark.parametrize("name,K", [("tetra", tetra()), ("torus", torus())], ids=["tetra", "torus"])
def test_de_morgan(name, K):
    D, f = dual_complex(K)
    for x in K.cells:
        for y in K.cells:
            j = K.join(x, y)
            if j is not TOP:
                assert f[x] & f[y] == f[j]
            m = x & y
            if m in K:
                assert D.join(f[x], f[y]) == f[m]


def test_dual_preserves_cardinality():
    for _, K in closed_corpus():
        _, f = dual_complex(K)
        assert len(set(f.values())) == len(K.cells)


@pytest.mark.parametrize("name,K", closed_corpus(), ids=[n for n, _ in closed_corpus()])
def test_double_dual_maps_cells_to_cells(name, K):
    DD, iso = double_dual_isomorphism(K)
    assert set(iso.values()) == set(DD.cells)
    for x in K.cells:
        assert DD.rank(iso[x]) == K.rank(x)


def test_bdual_of_path_endpoint():
    P = path(1)
    v = P.vertices[0]
    d = bdual_set(P, {v})
    e = P.maximal_cells()[0]
    assert d.members == frozenset({e, frozenset([v])})
    assert d.flavor == "tilde"


def test_bdual_on_closed_complex_is_plain():
    T = tetra()
    for x in T.cells:
        assert bdual_set(T, x).members == dual_set(T, x)


def test_bdual_of_shared_triangle():
    B = bitetra()
    tops = B.maximal_cells()
    shared = tops[0] & tops[1]
    assert bdual_set(B, shared).members == frozenset(tops)


def test_bdual_of_boundary_maximal_cell():
    P = prism_n(4)
    dP = boundary(P)
    for y in dP.maximal_cells():
        (z,) = [c for c in P.maximal_cells() if y < c]
        assert bdual_set(P, y).members == frozenset({y, z})


def test_bdual_errors():
    with pytest.raises(EmptySet):
        bdual_set(tetra(), set())


@pytest.mark.parametrize("K", [prism_n(4), bitetra(), path(1), path(3)], ids=["prism", "bitetra", "path1", "path3"])
def test_bdual_reverses_inclusion(K):
    bual = {x: bdual_set(K, x).members for x in K.cells}
    for x in K.cells:
        for y in K.cells:
            assert (bual[x] < bual[y]) == (y < x)


def test_dual_of_identity():
    T = tetra()
    d = dual_map(identity_map(T))
    assert d.kind == "isomorphism"
    assert all(x == y for x, y in d.table.items())


def test_dual_of_halving_is_collapse():
    rho = halving_map(4)
    pi = dual_map(rho)
    assert pi.kind == "collapse"
    assert check_collapse(pi).passed


def test_dual_map_is_involution():
    rho = halving_map(4)
    back = dual_map(dual_map(rho))
    _, iso_dom = double_dual_isomorphism(rho.domain)
    _, iso_cod = double_dual_isomorphism(rho.codomain)
    for x, y in rho.table.items():
        assert back.table[iso_dom[x]] == iso_cod[y]


def test_dual_of_bdiv_reduction():
    _, rho = barycentric_subdivision(cycle(4))
    assert check_collapse(dual_map(rho)).passed
