"""Slices, slice sequences and the two directions of their correspondence,
plus relative subdivision of a boundary component."""

from dataclasses import dataclass

from . import canon
from .boundary import (
    augmented_poset,
    canonical_maps,
    collar,
    compatible,
    midsection,
    orthogonal,
    relative_report,
)
from .complex import CellComplex, boundary, classify
from .errors import (
    CompatibilityViolated,
    NotASlice,
    NotPureRelative,
    PreconditionFailed,
    RelationViolated,
    UniformityViolated,
    VertexClash,
)
from .labels import label_key
from .morphisms import CcMap, check_reduction, compose, identity_map


@dataclass(frozen=True)
class Slice:
    complex: CellComplex
    components: tuple   # (J, L)
    midsection: CellComplex


def slice_failures(S, first=None):
    """Clauses of the slice definition that fail, as ``(clause, witness)`` pairs."""
    fails = []
    rep = classify(S)
    if not rep.in_C:
        fails.append(("in_C", rep.witnesses))
    dK = boundary(S)
    off = S.vertex_set() - dK.vertex_set()
    if off:
        fails.append(("vertices on boundary", min(off, key=label_key)))
    comps = list(rep.boundary_components)
    if len(comps) != 2:
        fails.append(("two boundary components", len(comps)))
        return fails, comps
    if first is not None and not (frozenset(first) & comps[0].vertex_set()):
        comps.reverse()
    mids = []
    for J in comps:
        rel = relative_report(S, J)
        if not rel.uniform:
            fails.append(("uniform", rel.witnesses))
        if not rel.local_relative:
            fails.append(("local", rel.witnesses.get("local_relative")))
        if rel.non_degenerate:
            mids.append(midsection(S, J)[0])
    if len(mids) == 2 and mids[0] != mids[1]:
        fails.append(("equal midsections", None))
    return fails, comps


def check_slice(S, first=None):
    """Validate S as a slice. Components are ordered by smallest vertex unless
    ``first`` names a vertex set that the first component must meet."""
    fails, comps = slice_failures(S, first)
    if fails:
        raise NotASlice(fails)
    return Slice(S, tuple(comps), midsection(S, comps[0])[0])


@dataclass(frozen=True)
class SliceSequence:
    """J -rho_J-> J' <-pi_J- M -pi_L-> L' <-rho_L- L."""

    J: CellComplex
    Jp: CellComplex
    M: CellComplex
    Lp: CellComplex
    L: CellComplex
    rho_J: CcMap
    pi_J: CcMap
    pi_L: CcMap
    rho_L: CcMap

    def complexes(self):
        return [self.J, self.Jp, self.M, self.Lp, self.L]

    def diagram(self):
        return self.complexes(), [
            (0, 1, self.rho_J.table), (2, 1, self.pi_J.table),
            (2, 3, self.pi_L.table), (4, 3, self.rho_L.table),
        ]

    def certificate(self):
        return canon.diagram_certificate(*self.diagram())

    def validate(self):
        shape = [
            (self.rho_J, self.J, self.Jp), (self.pi_J, self.M, self.Jp),
            (self.pi_L, self.M, self.Lp), (self.rho_L, self.L, self.Lp),
        ]
        for phi, dom, cod in shape:
            if phi.domain != dom or phi.codomain != cod:
                raise RelationViolated("map endpoints do not match the sequence nodes")
        if not (self.rho_J.is_reduction() and self.rho_L.is_reduction()):
            raise RelationViolated("outer maps must be reductions")
        if not (self.pi_J.is_collapse() and self.pi_L.is_collapse()):
            raise RelationViolated("inner maps must be collapses")
        for name, verdict in (
            ("rho_J compatible with pi_J", compatible(self.rho_J, self.pi_J)),
            ("rho_L compatible with pi_L", compatible(self.rho_L, self.pi_L)),
            ("pi_J orthogonal to pi_L", orthogonal(self.pi_J, self.pi_L)),
        ):
            if not verdict.holds:
                raise RelationViolated(name, witness=(verdict.clause, verdict.witness))
        return self


def slice_to_sequence(S):
    if not isinstance(S, Slice):
        S = check_slice(S)
    J, L = S.components
    rho_J, pi_J = canonical_maps(S.complex, J, check=False)
    rho_L, pi_L = canonical_maps(S.complex, L, check=False)
    M = pi_J.domain
    pi_L = CcMap(M, pi_L.codomain, pi_L.table, pi_L.kind)
    return SliceSequence(J, rho_J.codomain, M, rho_L.codomain, L, rho_J, pi_J, pi_L, rho_L)


def _relabel_map(phi, f_dom=None, f_cod=None):
    dom = phi.domain.relabel(f_dom) if f_dom else phi.domain
    cod = phi.codomain.relabel(f_cod) if f_cod else phi.codomain

    def tr(cell, f):
        return frozenset(f(v) for v in cell) if f else cell

    table = {tr(x, f_dom): tr(y, f_cod) for x, y in phi.table.items()}
    return CcMap(dom, cod, table, phi.kind)


def _same(v):
    return v


def _tag0(v):
    return (0, v)


def _tag1(v):
    return (1, v)


def sequence_labels(seq):
    """Vertex relabelings applied to J and L by sequence_to_slice."""
    if seq.J.vertex_set() & seq.L.vertex_set():
        return _tag0, _tag1
    return _same, _same


def sequence_to_slice(seq, validate=True):
    """Build the slice whose canonical sequence is ``seq``.

    J and L keep their labels unless they share vertices, in which case they
    become ``(0, v)`` and ``(1, v)``.
    """
    if validate:
        seq.validate()
    fJ, fL = sequence_labels(seq)
    if fJ is _same:
        fJ = fL = None
    rho_J = _relabel_map(seq.rho_J, fJ, lambda v: ("#J", v))
    rho_L = _relabel_map(seq.rho_L, fL, lambda v: ("#L", v))
    pi_J = _relabel_map(seq.pi_J, None, lambda v: ("#J", v))
    pi_L = _relabel_map(seq.pi_L, None, lambda v: ("#L", v))
    Jp, Lp = rho_J.codomain, rho_L.codomain
    rank_of, _ = augmented_poset(seq.M, pi_J, pi_L)
    rank_of.update(Jp.rank_of)
    rank_of.update(Lp.rank_of)
    S0 = CellComplex.trusted(rank_of)
    S1 = relative_subdivide(S0, Jp, rho_J)
    S2 = relative_subdivide(S1, Lp, rho_L)
    return check_slice(S2, first=rho_J.domain.vertex_set())


def relative_subdivide(K, Jp, rho, check=True):
    """Replace the boundary component Jp of K by the domain J of the reduction rho."""
    J = rho.domain
    if rho.codomain != Jp:
        raise PreconditionFailed("rho must land in the component being replaced", witness="codomain")
    if J.vertex_set() & K.vertex_set():
        raise VertexClash("the new component must be vertex-disjoint from K",
                          witness=min(J.vertex_set() & K.vertex_set(), key=label_key))
    if check:
        if not rho.is_reduction() and not check_reduction(rho).passed:
            raise PreconditionFailed("rho is not a reduction", witness="reduction")
        try:
            rho_K, pi_K = canonical_maps(K, Jp, check=False)
        except (NotPureRelative, UniformityViolated) as exc:
            raise PreconditionFailed("(K, J') is not uniform", witness=exc.witness) from exc
        verdict = compatible(compose(rho_K, rho), pi_K)
        if not verdict.holds:
            raise CompatibilityViolated(f"clause {verdict.clause} fails", witness=verdict.witness)
    J0 = Jp.vertex_set()
    rank_of = {x: r for x, r in zip(K.cells, K.ranks) if not x & J0}
    rank_of.update(J.rank_of)
    for y in collar(K, J0):
        inner = y & J0
        grown = set(y - J0)
        for x in J.cells:
            if rho(x) <= inner:
                grown.update(x)
        rank_of[frozenset(grown)] = K.rank(y)
    return CellComplex.trusted(rank_of)


def halving_sequence(n=4):
    """C_2n -> C_n <- C_n -> C_n <- C_n with the halving reduction first."""
    from .generators import halving_map

    h = halving_map(n)
    C = h.codomain
    one = identity_map(C)
    return SliceSequence(h.domain, C, C, C, C, h, one, one, one)
