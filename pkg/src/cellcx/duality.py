"""Duality on closed complexes, the boundary-aware dual set, and dual maps."""

from dataclasses import dataclass

from . import config
from .complex import CellComplex, boundary, classify
from .errors import EmptySet, NotClosed, NotInC, NotPure, UnknownVertex
from .labels import sorted_labels
from .morphisms import CcMap, check_collapse, check_reduction

DUAL_KIND = {
    "reduction": "collapse",
    "collapse": "reduction",
    "isomorphism": "isomorphism",
    "homomorphism": "unchecked",
    "unchecked": "unchecked",
}


def _check_vertices(K, A):
    A = frozenset(A)
    unknown = A - K.vertex_set()
    if unknown:
        raise UnknownVertex(f"unknown vertices {sorted_labels(unknown)!r}", witness=unknown)
    return A


def dual_set(K, A):
    """Maximal cells of K containing the vertex set A."""
    A = _check_vertices(K, A)
    if not K.is_pure():
        raise NotPure("dual sets are only defined on pure complexes")
    top = K.max_rank
    return frozenset(c for c in K.cells_containing(A) if K.rank(c) == top)


def dual_complex(K):
    """Return ``(K*, forward)`` where ``forward`` maps each cell x to x*.

    Dual vertices are 0..m-1, numbering the maximal cells of K in canonical
    cell order.
    """
    if "dual" in K._cache:
        return K._cache["dual"]
    rep = classify(K)
    if not rep.closed:
        raise NotClosed("dual_complex needs a closed complex")
    if not rep.in_C:
        raise NotInC("dual_complex needs a complex in C")
    tops = K.maximal_cells()
    num = {z: k for k, z in enumerate(tops)}
    R = K.max_rank
    forward, rank_of = {}, {}
    above = K._above
    for i, x in enumerate(K.cells):
        members = frozenset(num[K.cells[j]] for j in K.ids(above[i] | (1 << i)) if K.cells[j] in num)
        forward[x] = members
        rank_of[members] = R - K.ranks[i]
    D = CellComplex.trusted(rank_of)
    K._cache["dual"] = (D, forward)
    return D, forward


def double_dual_isomorphism(K):
    """``(K**, iso)`` with iso: x -> (x*)* a cell isomorphism K -> K**."""
    D, f = dual_complex(K)
    DD, g = dual_complex(D)
    return DD, {x: g[f[x]] for x in K.cells}


@dataclass(frozen=True)
class DualCell:
    members: frozenset
    origin: frozenset
    flavor: str


def bdual_set(K, A):
    """Dual set in K enlarged by the dual set in the boundary of K.

    The boundary part is empty unless every vertex of A lies on the boundary.
    """
    A = _check_vertices(K, A)
    if not A:
        raise EmptySet("the boundary-aware dual of the empty set is not defined")
    if not classify(K).non_singular:
        raise NotClosed("bdual_set needs a non-singular complex")
    inner = dual_set(K, A)
    dK = boundary(K)
    outer = frozenset()
    if dK.cells and A <= dK.vertex_set():
        outer = frozenset(y for y in dK.cells_containing(A) if not dK.above_bits(dK.index[y], strict=True))
    return DualCell(inner | outer, A, "tilde" if outer else "plain")


def dual_map(phi):
    """phi*(x*) = phi(x)* between the dual complexes."""
    DJ, fJ = dual_complex(phi.domain)
    DK, fK = dual_complex(phi.codomain)
    table = {fJ[x]: fK[y] for x, y in phi.table.items()}
    out = CcMap(DJ, DK, table, DUAL_KIND[phi.kind])
    if config.DEBUG and out.kind in ("reduction", "collapse"):
        rep = check_reduction(out) if out.kind == "reduction" else check_collapse(out)
        assert rep.passed, rep.failures()
    return out
