"""Maps between cell complexes: homomorphism, reduction and collapse checks,
isomorphism search, barycentric subdivision and composition."""

from dataclasses import dataclass, field

from . import canon, config
from .complex import CellComplex, _iter_bits, is_closed
from .errors import (
    CellNotInComplex,
    DomainMismatch,
    IncompleteMap,
    NoEqualRankPreimage,
    NotClosed,
    NotOrderPreserving,
    NotSurjective,
)
from .labels import label_key

KINDS = ("unchecked", "homomorphism", "reduction", "collapse", "isomorphism")


class CcMap:
    """A total cell-to-cell map between two complexes, stored as a table."""

    __slots__ = ("domain", "codomain", "table", "kind", "_fibers")

    def __init__(self, domain, codomain, table, kind="unchecked"):
        if kind not in KINDS:
            raise ValueError(f"unknown map kind {kind!r}")
        table = dict(table)
        missing = [x for x in domain.cells if x not in table]
        if missing or len(table) != len(domain.cells):
            raise IncompleteMap("assignment is not total on the domain", witness=missing[:1])
        for x, y in table.items():
            if y not in codomain.index:
                raise CellNotInComplex(f"image {set(y)!r} of {set(x)!r} not in codomain", witness=(x, y))
        self.domain = domain
        self.codomain = codomain
        self.table = table
        self.kind = kind
        self._fibers = None

    def __call__(self, x):
        return self.table[x]

    def __eq__(self, other):
        if not isinstance(other, CcMap):
            return NotImplemented
        return (self.domain == other.domain and self.codomain == other.codomain
                and self.table == other.table)

    def __hash__(self):
        return hash((self.domain, self.codomain))

    def __repr__(self):
        return f"CcMap({self.domain!r} -> {self.codomain!r}, kind={self.kind})"

    def with_kind(self, kind):
        return CcMap(self.domain, self.codomain, self.table, kind)

    def fiber(self, y):
        if self._fibers is None:
            fib = {}
            for x in self.domain.cells:
                fib.setdefault(self.table[x], []).append(x)
            self._fibers = {k: tuple(v) for k, v in fib.items()}
        return self._fibers.get(y, ())

    def image(self):
        return {self.table[x] for x in self.domain.cells}

    def is_surjective(self):
        return len(self.image()) == len(self.codomain.cells)

    def is_reduction(self):
        return self.kind in ("reduction", "isomorphism")

    def is_collapse(self):
        return self.kind in ("collapse", "isomorphism")


def identity_map(K):
    return CcMap(K, K, {x: x for x in K.cells}, "isomorphism")


def vertex_induced_map(J, K, vmap, kind="unchecked"):
    """Map cells of J through a vertex map, taking the image vertex set as a cell."""
    return CcMap(J, K, {x: frozenset(vmap[v] for v in x) for x in J.cells}, kind)


def _stronger(kind, new):
    order = {"unchecked": 0, "homomorphism": 1, "reduction": 2, "collapse": 2, "isomorphism": 3}
    if kind == new or order[kind] > order[new]:
        return kind
    if order[kind] == order[new] == 2:
        return "isomorphism"
    return new


def order_violation(phi):
    J = phi.domain
    t = phi.table
    for i, y in enumerate(J.cells):
        fy = t[y]
        for j in J.face_ids(i):
            x = J.cells[j]
            if not t[x] <= fy:
                return (x, y)
    return None


def check_homomorphism(phi):
    bad = order_violation(phi)
    if bad:
        raise NotOrderPreserving(f"{set(bad[0])!r} <= {set(bad[1])!r} not preserved", witness=bad)
    K = phi.codomain
    for y in sorted(phi.image(), key=lambda c: (K.rank(c), label_key(c))):
        r = K.rank(y)
        if not any(phi.domain.rank(x) == r for x in phi.fiber(y)):
            raise NoEqualRankPreimage(f"no rank-{r} preimage of {set(y)!r}", witness=y)
    return phi.with_kind(_stronger(phi.kind, "homomorphism"))


def is_isomorphism(phi):
    J, K = phi.domain, phi.codomain
    if len(J.cells) != len(K.cells) or not phi.is_surjective():
        return False
    if any(J.rank(x) != K.rank(y) for x, y in phi.table.items()):
        return False
    return order_violation(phi) is None


@dataclass
class ConditionReport:
    family: str
    conditions: dict = field(default_factory=dict)
    map: CcMap = None

    @property
    def passed(self):
        return all(ok for ok, _ in self.conditions.values())

    def failures(self):
        return {k: w for k, (ok, w) in self.conditions.items() if not ok}

    def __getitem__(self, label):
        return self.conditions[label]


def _require_closed(phi):
    for side, K in (("domain", phi.domain), ("codomain", phi.codomain)):
        if not is_closed(K):
            raise NotClosed(f"{side} is not closed", witness=side)


def _structural_checks(phi):
    _require_closed(phi)
    missing = [y for y in phi.codomain.cells if not phi.fiber(y)]
    if missing:
        raise NotSurjective(f"{set(missing[0])!r} has no preimage", witness=missing[0])
    bad = order_violation(phi)
    if bad:
        raise NotOrderPreserving(f"{set(bad[0])!r} <= {set(bad[1])!r} not preserved", witness=bad)


def _first(pred_iter):
    for w in pred_iter:
        return (False, w)
    return (True, None)


def check_reduction(rho):
    """Evaluate r1, r3, r4, r5; the map's kind is upgraded on a full pass."""
    _structural_checks(rho)
    J, K, t = rho.domain, rho.codomain, rho.table
    rep = ConditionReport("reduction")

    def r1():
        for v in K.cells_of_rank(0):
            if len(rho.fiber(v)) != 1:
                yield (v, rho.fiber(v))

    def r3():
        for i, x in enumerate(J.cells):
            reach = {(t[J.cells[j]], J.ranks[j]) for j in _iter_bits(J.above_bits(i))}
            for k in _iter_bits(K.above_bits(K.index[t[x]])):
                if (K.cells[k], K.ranks[k]) not in reach:
                    yield (x, K.cells[k])

    def r4():
        for i, x in enumerate(J.cells):
            y = t[x]
            if J.ranks[i] == K.rank(y) - 1:
                n = sum(1 for j in J.coface_ids(i) if t[J.cells[j]] == y)
                if n != 2:
                    yield (x, n)

    def r5():
        for i, x in enumerate(J.cells):
            y = t[x]
            if J.ranks[i] == K.rank(y):
                for w in K.cofaces(y):
                    n = sum(1 for j in J.coface_ids(i) if t[J.cells[j]] == w)
                    if n != 1:
                        yield (x, w, n)

    for label, gen in (("r1", r1), ("r3", r3), ("r4", r4), ("r5", r5)):
        rep.conditions[label] = _first(gen())
    rep.map = rho.with_kind(_stronger(rho.kind, "reduction")) if rep.passed else rho
    return rep


def check_collapse(pi):
    """Evaluate c1, c3, c4, c5; the map's kind is upgraded on a full pass."""
    _structural_checks(pi)
    J, K, t = pi.domain, pi.codomain, pi.table
    rep = ConditionReport("collapse")

    def c1():
        for z in K.maximal_cells():
            if len(pi.fiber(z)) != 1:
                yield (z, pi.fiber(z))

    def c3():
        for i, x in enumerate(J.cells):
            reach = {(t[J.cells[j]], J.ranks[j]) for j in _iter_bits(J.below_bits(i))}
            for k in _iter_bits(K.below_bits(K.index[t[x]])):
                if (K.cells[k], K.ranks[k]) not in reach:
                    yield (x, K.cells[k])

    def c4():
        for i, x in enumerate(J.cells):
            y = t[x]
            if J.ranks[i] == K.rank(y) + 1:
                n = sum(1 for j in J.face_ids(i) if t[J.cells[j]] == y)
                if n != 2:
                    yield (x, n)

    def c5():
        for i, x in enumerate(J.cells):
            y = t[x]
            if J.ranks[i] == K.rank(y):
                for w in K.faces(y):
                    n = sum(1 for j in J.face_ids(i) if t[J.cells[j]] == w)
                    if n != 1:
                        yield (x, w, n)

    for label, gen in (("c1", c1), ("c3", c3), ("c4", c4), ("c5", c5)):
        rep.conditions[label] = _first(gen())
    rep.map = pi.with_kind(_stronger(pi.kind, "collapse")) if rep.passed else pi
    return rep


# -- isomorphism search -----------------------------------------------------

def _joint_colors(J, K, vertex_classes):
    cj, aj = canon.complex_digraph(J, 0)
    ck, ak = canon.complex_digraph(K, 0)
    colors = []
    for side, (L, cs) in enumerate(((J, cj), (K, ck))):
        classes = vertex_classes[side] if vertex_classes else {}
        for c, cell in zip(cs, L.cells):
            tag = ()
            if len(cell) == 1:
                (v,) = cell
                tag = (classes.get(v, 0),) if classes else ()
            colors.append((c[1], len(L.face_ids(L.index[cell])),
                           len(L.coface_ids(L.index[cell])), tag))
    n = len(J.cells)
    arcs = aj + [(u + n, v + n, c) for u, v, c in ak]
    g = canon.Digraph([repr(c) for c in colors], arcs)
    return canon.refine(g, canon.initial_colors(g)), n


def find_isomorphism(J, K, vertex_classes=None):
    """Return a cell bijection J -> K preserving ranks and inclusions, or None.

    ``vertex_classes`` optionally gives ``(classes_J, classes_K)`` dicts from
    vertex to a class tag; the isomorphism must respect the tags.
    """
    if J.f_vector() != K.f_vector():
        return None
    if not J.cells:
        return {}
    col, n = _joint_colors(J, K, vertex_classes)
    cj, ck = col[:n], col[n:]
    if sorted(cj) != sorted(ck):
        return None
    vj = [J.index[frozenset((v,))] for v in J.vertices]
    vk = [K.index[frozenset((v,))] for v in K.vertices]
    by_color = {}
    for v, i in zip(K.vertices, vk):
        by_color.setdefault(ck[i], []).append(v)

    # visit J's vertices so that each one is adjacent to an earlier one when possible
    adj = {v: set() for v in J.vertices}
    for e in J.edges():
        for a in e:
            adj[a].update(e - {a})
    order, seen = [], set()
    for start in sorted(J.vertices, key=lambda v: (len(by_color[cj[J.index[frozenset((v,))]]]), label_key(v))):
        if start in seen:
            continue
        queue = [start]
        seen.add(start)
        while queue:
            v = queue.pop(0)
            order.append(v)
            for w in sorted(adj[v], key=label_key):
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
    pos = {v: k for k, v in enumerate(order)}
    # a cell becomes checkable once its last vertex (in visiting order) is placed
    due = {v: [] for v in order}
    for c, r in zip(J.cells, J.ranks):
        if len(c) > 1:
            due[max(c, key=pos.__getitem__)].append((c, r))

    assign, used = {}, set()
    kidx, kranks = K.index, K.ranks
    vcol = {v: cj[i] for v, i in zip(J.vertices, vj)}

    def consistent(v):
        for c, r in due[v]:
            img = frozenset(assign[u] for u in c)
            k = kidx.get(img)
            if k is None or kranks[k] != r:
                return False
        return True

    def search(k):
        if k == len(order):
            return True
        v = order[k]
        for w in by_color[vcol[v]]:
            if w in used:
                continue
            assign[v] = w
            used.add(w)
            if consistent(v) and search(k + 1):
                return True
            used.discard(w)
            del assign[v]
        return False

    if not search(0):
        return None
    return {c: frozenset(assign[v] for v in c) for c in J.cells}


def isomorphic(J, K):
    return find_isomorphism(J, K) is not None


def isomorphism_map(J, K, vertex_classes=None):
    table = find_isomorphism(J, K, vertex_classes)
    return None if table is None else CcMap(J, K, table, "isomorphism")


# -- barycentric subdivision ------------------------------------------------

def chains(K):
    """All nonempty chains of K as ascending tuples of cells."""
    out = []

    def extend(chain, i):
        out.append(chain)
        for j in _iter_bits(K.above_bits(i, strict=True)):
            extend(chain + (K.cells[j],), j)

    for i, c in enumerate(K.cells):
        extend((c,), i)
    return out


def barycentric_subdivision(K):
    """Complex of chains of K (vertices labelled by cells) and the last-element map."""
    rank_of = {}
    last = {}
    for ch in chains(K):
        cell = frozenset(ch)
        rank_of[cell] = len(ch) - 1
        last[cell] = ch[-1]
    B = CellComplex.trusted(rank_of)
    kind = "reduction" if is_closed(K) and K.cells else "homomorphism"
    return B, CcMap(B, K, last, kind)


def compose(phi, psi):
    """phi after psi."""
    if psi.codomain != phi.domain:
        raise DomainMismatch("codomain of the inner map differs from the domain of the outer map")
    table = {x: phi.table[y] for x, y in psi.table.items()}
    kind = "unchecked"
    if psi.is_reduction() and phi.is_reduction():
        kind = "isomorphism" if psi.kind == phi.kind == "isomorphism" else "reduction"
    elif psi.is_collapse() and phi.is_collapse():
        kind = "collapse"
    elif phi.kind != "unchecked" and psi.kind in ("reduction", "collapse", "isomorphism"):
        # surjectivity of the inner map carries the equal-rank preimages through
        kind = "homomorphism"
    out = CcMap(psi.domain, phi.codomain, table, kind)
    if config.DEBUG and kind in ("reduction", "collapse"):
        rep = check_reduction(out) if kind == "reduction" else check_collapse(out)
        assert rep.passed, rep.failures()
    return out


def map_certificate(phi):
    return canon.diagram_certificate([phi.domain, phi.codomain], [(0, 1, phi.table)])
