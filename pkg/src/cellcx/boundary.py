"""Relative complexes: collars, midsections, transitions, uniformity, the
canonical reduction/collapse pair, relations between maps and geometric
sequences."""

from dataclasses import dataclass, field

from . import config
from .complex import TOP, CellComplex, classify, components, is_connected, restriction
from .duality import dual_complex, dual_map
from .errors import (
    DegenerateCellInComplement,
    EmptyCollar,
    JunctionViolation,
    NonConnectedTrace,
    NotASubcomplex,
    NotPureRelative,
    PreconditionFailed,
    ShapeMismatch,
    UniformityViolated,
    VertexClash,
)
from .labels import sorted_labels
from .morphisms import CcMap, check_collapse, check_reduction


def check_subcomplex(K, J):
    if not J.is_subcomplex_of(K):
        bad = next((c for c in J.cells if c not in K.index or K.rank(c) != J.rank(c)), None)
        raise NotASubcomplex("J is not a sub-complex of K with agreeing ranks", witness=bad)


def collar(K, B):
    """Cells meeting the vertex set B without being contained in it."""
    B = frozenset(B)
    return tuple(x for x in K.cells if x & B and not x <= B)


def edge_label(e):
    return tuple(sorted_labels(e))


def collar_edges(K, J0, x):
    """Collar edges (as sorted label tuples) contained in the cell x."""
    i = K.index[x]
    out = []
    for j in K.ids(K.below_bits(i)):
        if K.ranks[j] == 1:
            e = K.cells[j]
            if e & J0 and not e <= J0:
                out.append(edge_label(e))
    return frozenset(out)


def degenerate_witness(K, J):
    J0 = J.vertex_set()
    for x in K.cells:
        if x not in J.index and x <= J0:
            return x
    return None


def _trace_connected(J, x):
    verts = x & J.vertex_set()
    return is_connected(restriction(J, verts)) if verts else True


def midsection(K, J):
    """Return ``(M, E)`` with ``E`` mapping each collar cell to its midsection cell."""
    check_subcomplex(K, J)
    bad = degenerate_witness(K, J)
    if bad is not None:
        raise DegenerateCellInComplement(f"{set(bad)!r} lies in J's vertices but not in J", witness=bad)
    J0 = J.vertex_set()
    col = collar(K, J0)
    if not col:
        raise EmptyCollar("the collar of J in K is empty")
    for x in col:
        if K.rank(x) == 2 and not _trace_connected(J, x):
            raise NonConnectedTrace(f"trace of J on {set(x)!r} is disconnected", witness=x)
    E = {x: collar_edges(K, J0, x) for x in col}
    M = CellComplex.trusted({E[x]: K.rank(x) - 1 for x in col})
    return M, E


def reduced_cell(K, J0, x):
    return frozenset(v for e in collar_edges(K, J0, x) for v in e if v in J0)


def _minimal(K, cells):
    """Cells of the given collection not strictly above another member."""
    cells = list(cells)
    ids = {K.index[c] for c in cells}
    return [c for c in cells if not any(j in ids for j in K.ids(K.below_bits(K.index[c], strict=True)))]


def minimal_collar_above(K, col, y):
    colset = set(col)
    return _minimal(K, [z for z in K.above(y) if z in colset])


def _max_rank_of(K, J, x):
    ranks = [J.rank(c) for c in J.cells if c <= x]
    return max(ranks) if ranks else -1


def pure_relative_witness(K, J, col=None):
    J0 = J.vertex_set()
    col = collar(K, J0) if col is None else col
    for x in col:
        inside = J.sub([c for c in J.cells if c <= x])
        if inside.cells and not inside.is_pure():
            return ("trace not pure", x)
    for y in J.cells:
        mins = minimal_collar_above(K, col, y)
        if not mins:
            return ("no collar cell above", y)
        if len({K.rank(z) for z in mins}) != 1:
            return ("minimal collar cells of unequal rank", y)
    return None


def relative_rank(K, J, col=None):
    col = collar(K, J.vertex_set()) if col is None else col
    return {y: K.rank(minimal_collar_above(K, col, y)[0]) - 1 for y in J.cells}


def uniformity_witness(K, J0, col, reduced):
    for x in col:
        tx = x & J0
        for y in col:
            if (tx <= (y & J0)) != (reduced[x] <= reduced[y]):
                return (x, y)
    return None


@dataclass(frozen=True)
class Transition:
    complex: CellComplex
    reduced: dict      # collar cell -> reduced cell
    extension: dict    # cell of J -> reduced cell


def transition(K, J):
    check_subcomplex(K, J)
    J0 = J.vertex_set()
    col = collar(K, J0)
    bad = pure_relative_witness(K, J, col)
    if bad is not None:
        raise NotPureRelative(bad[0], witness=bad[1])
    reduced = {x: reduced_cell(K, J0, x) for x in col}
    bad = uniformity_witness(K, J0, col, reduced)
    if bad is not None:
        raise UniformityViolated("trace inclusion and reduced-cell inclusion disagree", witness=bad)
    groups = {}
    for x in col:
        groups.setdefault(reduced[x], []).append(x)
    rank_of = {}
    for w, reps in groups.items():
        ranks = {_max_rank_of(K, J, x) for x in _minimal(K, reps)}
        if len(ranks) != 1:
            raise UniformityViolated("minimal representatives give different ranks", witness=w)
        rank_of[w] = ranks.pop()
    extension = {}
    for y in J.cells:
        images = {reduced[z] for z in minimal_collar_above(K, col, y)}
        if len(images) != 1:
            raise UniformityViolated("minimal collar cells above a cell reduce differently", witness=y)
        extension[y] = images.pop()
    return Transition(CellComplex.trusted(rank_of), reduced, extension)


def _is_local(K):
    return classify(K).local


def local_relative_witness(K, J):
    if degenerate_witness(K, J) is not None:
        return ("degenerate", degenerate_witness(K, J))
    if not _is_local(K):
        return ("ambient not local", None)
    for comp in components(J):
        J1 = restriction(J, comp)
        col = collar(K, comp)
        for x in col:
            if not _trace_connected(J1, x):
                return ("trace not connected", x)
        if not col:
            return ("empty collar", comp)
        M, _ = midsection(K, J1)
        if not _is_local(M):
            return ("midsection not local", comp)
    return None


def exactly_collared(K, J):
    if not J.cells:
        return True
    if degenerate_witness(K, J) is not None:
        return False
    try:
        M, E = midsection(K, J)
    except (EmptyCollar, NonConnectedTrace):
        return False
    J0 = J.vertex_set()
    table = {}
    for x, e in E.items():
        t = x & J0
        if t not in J.index:
            return False
        table[e] = t
    if len(set(table.values())) != len(J.cells) or len(M.cells) != len(J.cells):
        return False
    if any(M.rank(e) != J.rank(t) for e, t in table.items()):
        return False
    phi = CcMap(M, J, table)
    from .morphisms import order_violation

    return order_violation(phi) is None


@dataclass
class RelativeReport:
    non_degenerate: bool
    pure_relative: bool
    uniformity_U: bool
    transition_in_B: bool
    uniform: bool
    local_relative: bool
    exactly_collared: bool
    relative_rank: dict = field(default_factory=dict)
    transition: CellComplex = None
    witnesses: dict = field(default_factory=dict)


def relative_report(K, J):
    """All relative flags with witnesses. The four uniformity ingredients are
    evaluated independently of each other."""
    check_subcomplex(K, J)
    wit = {}
    J0 = J.vertex_set()
    col = collar(K, J0)
    bad = degenerate_witness(K, J)
    non_deg = bad is None
    if not non_deg:
        wit["non_degenerate"] = bad
    bad = pure_relative_witness(K, J, col) if J.cells else None
    pure = bad is None
    if not pure:
        wit["pure_relative"] = bad
    reduced = {x: reduced_cell(K, J0, x) for x in col}
    bad = uniformity_witness(K, J0, col, reduced)
    U = bad is None
    if not U:
        wit["uniformity_U"] = bad
    trans, in_B = None, False
    if pure and U and J.cells:
        try:
            trans = transition(K, J).complex
            in_B = classify(trans).in_B
        except (NotPureRelative, UniformityViolated) as exc:
            wit["transition_in_B"] = exc.witness
    rel_rank = relative_rank(K, J, col) if pure and J.cells else {}
    bad = local_relative_witness(K, J) if J.cells else (None if _is_local(K) else ("ambient not local", None))
    if bad is not None:
        wit["local_relative"] = bad
    return RelativeReport(
        non_degenerate=non_deg, pure_relative=pure, uniformity_U=U, transition_in_B=in_B,
        uniform=non_deg and pure and U and in_B, local_relative=bad is None,
        exactly_collared=exactly_collared(K, J), relative_rank=rel_rank,
        transition=trans, witnesses=wit,
    )


def canonical_maps(K, J, check=True):
    """The reduction J -> J(K) and the collapse M_J^K -> J(K)."""
    if check:
        if not classify(K).in_C:
            raise PreconditionFailed("ambient complex not in C", witness="in_C")
        if not classify(J).in_B:
            raise PreconditionFailed("J not in B", witness="J in_B")
        rep = relative_report(K, J)
        for flag in ("uniform", "local_relative"):
            if not getattr(rep, flag):
                raise PreconditionFailed(f"(K,J) not {flag}", witness=flag)
    tr = transition(K, J)
    M, E = midsection(K, J)
    rho = CcMap(J, tr.complex, tr.extension, "reduction")
    pi = CcMap(M, tr.complex, {E[x]: tr.reduced[x] for x in E}, "collapse")
    if config.DEBUG:
        assert check_reduction(rho).passed
        assert check_collapse(pi).passed
    return rho, pi


# -- relations between maps -------------------------------------------------

@dataclass(frozen=True)
class Verdict:
    status: str              # "holds" | "fails" | "n/a"
    clause: str = None
    witness: object = None

    @property
    def holds(self):
        return self.status == "holds"


NA = Verdict("n/a")
HOLDS = Verdict("holds")


@dataclass(frozen=True)
class RelationReport:
    compatible: Verdict
    reflective: Verdict
    orthogonal: Verdict


def _pairs(cells):
    n = len(cells)
    for a in range(n):
        for b in range(a + 1, n):
            yield cells[a], cells[b]


def compatible(j, l):
    """j: J -> I compatible with l: L -> I."""
    I = j.codomain
    for w in I.cells:
        if len(j.fiber(w)) != 1 and len(l.fiber(w)) != 1:
            return Verdict("fails", "1", w)
    J = j.domain
    for x, x2 in _pairs(J.cells):
        s = J.join(x, x2)
        if s is not TOP and j(s) != I.join(j(x), j(x2)):
            return Verdict("fails", "2", (x, x2))
    L = l.domain
    for y, y2 in _pairs(L.cells):
        m = y & y2
        if m and l(m) != (l(y) & l(y2)):
            return Verdict("fails", "3", (y, y2))
    return HOLDS


def reflective(j, l):
    I, J, L = j.domain, j.codomain, l.codomain
    for w, w2 in _pairs(I.cells):
        a, b = J.join(j(w), j(w2)), L.join(l(w), l(w2))
        if a is TOP or b is TOP:
            continue
        s = I.join(w, w2)
        if s is TOP:
            return Verdict("fails", "existence", (w, w2))
        if j(s) != a or l(s) != b:
            return Verdict("fails", "preservation", (w, w2))
    return HOLDS


def orthogonal(j, l):
    I = j.domain
    for w, w2 in _pairs(I.cells):
        a, b = j(w) & j(w2), l(w) & l(w2)
        if not a or not b:
            continue
        s = w & w2
        if not s:
            return Verdict("fails", "existence", (w, w2))
        if j(s) != a or l(s) != b:
            return Verdict("fails", "preservation", (w, w2))
    return HOLDS


def relation_check(j, l):
    same_cod = j.codomain == l.codomain
    same_dom = j.domain == l.domain
    if not same_cod and not same_dom:
        raise ShapeMismatch("maps share neither domain nor codomain")
    return RelationReport(
        compatible=compatible(j, l) if same_cod else NA,
        reflective=reflective(j, l) if same_dom else NA,
        orthogonal=orthogonal(j, l) if same_dom else NA,
    )


# -- geometric sequences ----------------------------------------------------

RIGHT, LEFT = "right", "left"


@dataclass
class GeometricSequence:
    """nodes[k] and nodes[k+1] are joined by arrows[k] = (map, direction);
    direction RIGHT means nodes[k] -> nodes[k+1]."""

    nodes: list
    arrows: list


def _arrow_ends(arrow, k, nodes):
    phi, direction = arrow
    src, dst = (nodes[k], nodes[k + 1]) if direction == RIGHT else (nodes[k + 1], nodes[k])
    return phi.domain == src and phi.codomain == dst


def check_geometric_sequence(seq, check_dual=False):
    nodes, arrows = seq.nodes, seq.arrows
    if len(arrows) != len(nodes) - 1:
        raise JunctionViolation(-1, "arrow count must be node count minus one")
    ranks = {K.max_rank for K in nodes}
    if len(ranks) > 1:
        raise JunctionViolation(-1, "nodes have different ranks", sorted(ranks))
    for k, arrow in enumerate(arrows):
        phi, _ = arrow
        if not _arrow_ends(arrow, k, nodes):
            raise JunctionViolation(k, "arrow endpoints do not match nodes")
        if not (phi.is_reduction() or phi.is_collapse()):
            raise JunctionViolation(k, "arrow is neither a reduction nor a collapse", phi.kind)
    clauses = []
    for k in range(1, len(nodes) - 1):
        (a, da), (b, db) = arrows[k - 1], arrows[k]
        a_in, b_in = da == RIGHT, db == LEFT
        if a_in and b_in:
            pairs = [(a, b)] if a.is_reduction() and b.is_collapse() else []
            if b.is_reduction() and a.is_collapse():
                pairs.append((b, a))
            if not pairs:
                raise JunctionViolation(k, "same codomain needs a reduction and a collapse")
            if not any(compatible(r, p).holds for r, p in pairs):
                raise JunctionViolation(k, "reduction not compatible with collapse")
            clauses.append("compatible")
        elif not a_in and not b_in:
            ok = []
            if a.is_collapse() and b.is_collapse():
                ok.append(("orthogonal", orthogonal(a, b).holds))
            if a.is_reduction() and b.is_reduction():
                ok.append(("reflective", reflective(a, b).holds))
            if not ok:
                raise JunctionViolation(k, "same domain needs two collapses or two reductions")
            good = [name for name, flag in ok if flag]
            if not good:
                raise JunctionViolation(k, f"{ok[0][0]} relation fails")
            clauses.append(good[0])
        else:
            raise JunctionViolation(k, "arrows do not alternate")
    if check_dual:
        check_geometric_sequence(dual_sequence(seq))
    return clauses


def dual_sequence(seq):
    nodes = [dual_complex(K)[0] for K in seq.nodes]
    arrows = [(dual_map(phi), d) for phi, d in seq.arrows]
    return GeometricSequence(nodes, arrows)


def augmented_poset(M, phi_J, phi_L):
    """Cells phi_J(m) + phi_L(m) of rank rk(m)+1, plus the map m -> that cell."""
    if phi_J.codomain.vertex_set() & phi_L.codomain.vertex_set():
        raise VertexClash("augmented poset needs vertex-disjoint targets")
    cell_of = {m: phi_J(m) | phi_L(m) for m in M.cells}
    return {cell_of[m]: M.rank(m) + 1 for m in M.cells}, cell_of
