"""Cobordisms (K - J): construction, duals and gluing along boundary components."""

from dataclasses import dataclass, field

from .boundary import canonical_maps, compatible, degenerate_witness, exactly_collared, local_relative_witness, reflective
from .complex import CellComplex, boundary, classify, components, restriction
from .errors import (
    Degenerate,
    NotConnecting,
    NotInC,
    NotLocalRelative,
    NotPureRelative,
    PreconditionFailed,
    ReflectivityViolated,
    UniformityViolated,
    VertexClash,
)
from .labels import label_key
from .morphisms import CcMap, compose, find_isomorphism, identity_map
from .slices import relative_subdivide


@dataclass(frozen=True)
class Cobordism:
    complex: CellComplex
    ingoing: CellComplex
    exactly_collared: bool
    empty: bool = False
    origin: dict = field(default=None, compare=False, repr=False)

    @property
    def rank(self):
        return self.complex.max_rank

    def ingoing_components(self):
        J = self.ingoing
        return [restriction(J, c) for c in components(J)]

    def outgoing(self):
        if self.empty:
            return self.ingoing
        dK = boundary(self.complex)
        return restriction(dK, dK.vertex_set() - self.ingoing.vertex_set())

    def outgoing_components(self):
        L = self.outgoing()
        return [restriction(L, c) for c in components(L)]


def empty_cobordism(J):
    """The unit (J - J); never enters geometric construction."""
    return Cobordism(J, J, True, empty=True)


def _resolve_ingoing(K, ingoing):
    if isinstance(ingoing, CellComplex):
        return ingoing
    comps = classify(K).boundary_components
    cells = []
    for k in ingoing:
        if not 0 <= k < len(comps):
            raise PreconditionFailed(f"no boundary component {k}", witness=k)
        cells.extend(comps[k].cells)
    return K.sub(cells)


def make_cobordism(K, ingoing=()):
    """Validate (K - J) where J is given by boundary-component indices or as a subcomplex."""
    rep = classify(K)
    if not rep.in_C:
        raise NotInC("cobordism complex must be in C", witness=rep.witnesses)
    J = _resolve_ingoing(K, ingoing)
    if not J.is_subcomplex_of(boundary(K)):
        raise PreconditionFailed("J must be a union of boundary components", witness="subcomplex")
    if J.cells:
        dK = boundary(K)
        J0 = J.vertex_set()
        for comp in components(dK):
            if comp & J0 and not comp <= J0:
                raise PreconditionFailed("J must be a union of whole boundary components",
                                         witness=min(comp - J0, key=label_key))
        if J.max_rank != K.max_rank - 1:
            raise PreconditionFailed("J must have rank Rk(K)-1", witness=J.max_rank)
        for comp in components(J):
            if not classify(restriction(J, comp)).in_B:
                raise PreconditionFailed("each ingoing component must be in B", witness=min(comp, key=label_key))
    bad = degenerate_witness(K, J)
    if bad is not None:
        raise Degenerate("a cell outside J has all its vertices in J", witness=bad)
    bad = local_relative_witness(K, J) if J.cells else None
    if bad is not None:
        raise NotLocalRelative("(K, J) is not local", witness=bad)
    return Cobordism(K, J, exactly_collared(K, J))


def dual_cobordism(c, check=True):
    """bual(K minus J) together with dual(dK minus J), the latter ingoing.

    Vertices are 0..m-1: maximal cells of K first, then the maximal cells of the
    boundary outside J, each group in canonical cell order. ``origin`` on the
    result maps every new cell back to ``(flavor, cell)``.
    """
    if c.empty:
        return c
    K, J = c.complex, c.ingoing
    R = K.max_rank
    dK = boundary(K)
    J0 = J.vertex_set()
    tops = K.maximal_cells()
    outer = [y for y in dK.maximal_cells() if y not in J.index]
    num = {("bual", z): k for k, z in enumerate(tops)}
    num.update({("bdry", y): len(tops) + k for k, y in enumerate(outer)})
    outer_set = set(outer)
    rank_of, origin, ingoing = {}, {}, {}

    for i, x in enumerate(K.cells):
        if x <= J0:
            continue
        mem = {num[("bual", K.cells[j])] for j in K.ids(K.above_bits(i)) if K.ranks[j] == R}
        if x in dK.index:
            for j in dK.ids(dK.above_bits(dK.index[x])):
                y = dK.cells[j]
                if y in outer_set:
                    mem.add(num[("bdry", y)])
        cell = frozenset(mem)
        rank_of[cell] = R - K.ranks[i]
        origin[cell] = ("bual", x)
    for i, y in enumerate(dK.cells):
        if y <= J0:
            continue
        cell = frozenset(num[("bdry", dK.cells[j])] for j in dK.ids(dK.above_bits(i))
                         if dK.cells[j] in outer_set)
        rank_of[cell] = R - 1 - dK.ranks[i]
        ingoing[cell] = rank_of[cell]
        origin[cell] = ("bdry", y)
    D = CellComplex(rank_of) if check else CellComplex.trusted(rank_of)
    out = make_cobordism(D, D.sub(ingoing)) if check else Cobordism(D, D.sub(ingoing), True)
    return Cobordism(out.complex, out.ingoing, out.exactly_collared, origin=origin)


@dataclass(frozen=True)
class Glue:
    """Which components meet, and the reductions I -> L_a and I -> L_b.

    ``rho_a`` defaults to the identity on a's outgoing component. ``rho_b``
    defaults to an isomorphism found by search. ``automorphism`` (I -> I) is
    applied on b's side before ``rho_b``.
    """

    a_out: int = 0
    b_in: int = 0
    rho_a: CcMap = None
    rho_b: CcMap = None
    automorphism: CcMap = None


def _fresh_relabel(H, avoid):
    verts = H.vertices
    if all(type(v) is int for v in verts) and all(type(v) is int for v in avoid):
        base = max(avoid, default=-1) + 1
        return {v: base + k for k, v in enumerate(verts)}
    return {v: ("b", v) for v in verts}


def _relabel_codomain(phi, f):
    cod = phi.codomain.relabel(f)
    return CcMap(phi.domain, cod, {x: frozenset(f[v] for v in y) for x, y in phi.table.items()}, phi.kind)


def compose_cobordisms(a, b, glue=None):
    """Glue a's outgoing component to b's ingoing component through I.

    b's vertices are relabelled away from a's and I's; I keeps its own labels.
    """
    if a.empty:
        return b
    if b.empty:
        return a
    glue = glue or Glue()
    K = a.complex
    outs, ins = a.outgoing_components(), b.ingoing_components()
    if not (0 <= glue.a_out < len(outs)) or not (0 <= glue.b_in < len(ins)):
        raise PreconditionFailed("glue names a missing component", witness=(glue.a_out, glue.b_in))
    La = outs[glue.a_out]
    rho_a = glue.rho_a or identity_map(La)
    if rho_a.codomain != La:
        raise NotConnecting("rho_a must land in a's outgoing component", witness="rho_a")
    I = rho_a.domain

    f = _fresh_relabel(b.complex, K.vertex_set() | I.vertex_set())
    H = b.complex.relabel(f)
    Lb = ins[glue.b_in].relabel(f)
    if glue.rho_b is None:
        table = find_isomorphism(I, Lb)
        if table is None:
            raise NotConnecting("no isomorphism between the glued components", witness=None)
        rho_b = CcMap(I, Lb, table, "isomorphism")
    else:
        rho_b = _relabel_codomain(glue.rho_b, f)
        if rho_b.domain != I or rho_b.codomain != Lb:
            raise NotConnecting("rho_b must map I onto b's ingoing component", witness="rho_b")
    if glue.automorphism is not None:
        rho_b = compose(rho_b, glue.automorphism)

    try:
        rK, pK = canonical_maps(K, La, check=False)
        rH, pH = canonical_maps(H, Lb, check=False)
    except (NotPureRelative, UniformityViolated) as exc:
        raise NotConnecting("glued components must be uniform", witness=exc.witness) from exc
    ca, cb = compose(rK, rho_a), compose(rH, rho_b)
    for side, cmp in (("a", compatible(ca, pK)), ("b", compatible(cb, pH))):
        if not cmp.holds:
            raise NotConnecting(f"composite reduction on side {side} is not compatible",
                                witness=(cmp.clause, cmp.witness))
    ref = reflective(ca, cb)
    if ref.status == "fails":
        raise ReflectivityViolated("composite reductions are not reflective", witness=(ref.clause, ref.witness))

    Ka = K if glue.rho_a is None else relative_subdivide(K, La, rho_a, check=False)
    Hb = relative_subdivide(H, Lb, rho_b, check=False)
    rank_of = dict(Ka.rank_of)
    for x, r in Hb.rank_of.items():
        if rank_of.setdefault(x, r) != r:
            raise VertexClash("glued complexes disagree on a shared cell", witness=x)
    U = CellComplex(rank_of)
    if not classify(U).in_C:
        raise AssertionError(f"glued complex left C: {classify(U).witnesses}")
    keep = [x for x in a.ingoing.cells]
    for k, comp in enumerate(ins):
        if k != glue.b_in:
            keep.extend(frozenset(f[v] for v in x) for x in comp.cells)
    out = make_cobordism(U, U.sub(keep))
    return Cobordism(out.complex, out.ingoing, out.exactly_collared, origin={"b_vertices": f})


def stack(cobs):
    """Left-to-right composition with default gluing."""
    out = cobs[0]
    for c in cobs[1:]:
        out = compose_cobordisms(out, c)
    return out


__all__ = [
    "Cobordism", "Glue", "compose_cobordisms", "dual_cobordism", "empty_cobordism",
    "make_cobordism", "stack",
]
