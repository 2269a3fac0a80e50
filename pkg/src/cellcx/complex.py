"""Cell complexes: construction, validation, incidence and classification.

A cell is a ``frozenset`` of vertex labels; its rank is stored by the
complex. Cells are kept in canonical order, sorted by ``(rank, labels)``,
and incidence is held as one bitset per cell over cell indices.
"""

from dataclasses import dataclass, field

from . import config, kernels
from .errors import (
    AxiomViolation,
    CellNotInComplex,
    DuplicateCell,
    EmptyCellError,
    MaximalCellHasNoFigure,
    MissingSingleton,
    RankOfMinimalNonZero,
    UnknownVertex,
)
from .labels import label_key, set_key, sorted_labels


class _Top:
    """The formal top element, joined to when no cell contains both arguments."""

    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "TOP"

    def __reduce__(self):
        return (_Top, ())


TOP = _Top()
EMPTY = frozenset()


def _iter_bits(m):
    while m:
        low = m & -m
        yield low.bit_length() - 1
        m ^= low


def cell_sort_key(cell, rank):
    return (rank, set_key(cell))


class CellComplex:
    """Immutable validated cell complex. Build with :func:`build_complex`."""

    __slots__ = (
        "cells", "ranks", "index", "vertices", "_vpos", "masks", "_below", "_above",
        "_faces", "_cofaces", "_cache",
    )

    def __init__(self, rank_of, _validate=True):
        items = sorted(rank_of.items(), key=lambda kv: cell_sort_key(kv[0], kv[1]))
        self.cells = tuple(c for c, _ in items)
        self.ranks = tuple(r for _, r in items)
        self.index = {c: i for i, c in enumerate(self.cells)}
        verts = set()
        for c in self.cells:
            verts.update(c)
        self.vertices = tuple(sorted_labels(verts))
        self._vpos = {v: i for i, v in enumerate(self.vertices)}
        self.masks = [self._mask(c) for c in self.cells]
        self._cache = {}
        if _validate:
            self._check_singletons()
        self._below = kernels.strict_below(self.masks)
        self._above = kernels.transpose(self._below)
        if _validate:
            self._check_axioms()
        self._faces = None
        self._cofaces = None

    # -- construction helpers -------------------------------------------
    @classmethod
    def trusted(cls, rank_of):
        """Build without validation, unless the debug flag is on."""
        return cls(dict(rank_of), _validate=config.DEBUG)

    def _mask(self, cell):
        m = 0
        pos = self._vpos
        for v in cell:
            m |= 1 << pos[v]
        return m

    def _check_singletons(self):
        for v in self.vertices:
            s = frozenset((v,))
            if s not in self.index:
                raise MissingSingleton(f"vertex {v!r} has no singleton cell", witness=v)
            if self.ranks[self.index[s]] != 0:
                raise RankOfMinimalNonZero(f"singleton {{{v!r}}} has nonzero rank", witness=s)

    def _check_axioms(self):
        ranks = list(self.ranks)
        hit = kernels.rank_violation(self._below, ranks)
        if hit:
            raise AxiomViolation("i", tuple(self.cells[i] for i in hit))
        hit = kernels.gap_violation(self._below, ranks)
        if hit:
            raise AxiomViolation("ii", tuple(self.cells[i] for i in hit))
        hit = kernels.intersection_violation(self.masks, self._below)
        if hit:
            raise AxiomViolation("iii", tuple(self.cells[i] for i in hit))
        hit = kernels.diamond_violation(self._below, ranks)
        if hit:
            x, y, count = hit
            raise AxiomViolation(
                "iv", (self.cells[x], self.cells[y]),
                f"diamond between {set(self.cells[x])} and {set(self.cells[y])} has {count} middle cells",
            )

    def revalidate(self):
        self._check_singletons()
        self._check_axioms()
        return self

    # -- basic protocol --------------------------------------------------
    def __len__(self):
        return len(self.cells)

    def __iter__(self):
        return iter(self.cells)

    def __contains__(self, cell):
        return cell in self.index

    def __eq__(self, other):
        if not isinstance(other, CellComplex):
            return NotImplemented
        return self.cells == other.cells and self.ranks == other.ranks

    def __hash__(self):
        return hash((self.cells, self.ranks))

    def __repr__(self):
        return f"CellComplex(f={self.f_vector()})"

    def _idx(self, cell):
        try:
            return self.index[cell]
        except KeyError:
            raise CellNotInComplex(f"{set(cell)!r} is not a cell", witness=cell) from None

    def rank(self, cell):
        return self.ranks[self._idx(cell)]

    @property
    def max_rank(self):
        return self.ranks[-1] if self.ranks else -1

    @property
    def rank_of(self):
        return dict(zip(self.cells, self.ranks))

    def vertex_set(self):
        return frozenset(self.vertices)

    def cells_of_rank(self, r):
        return tuple(c for c, k in zip(self.cells, self.ranks) if k == r)

    def f_vector(self):
        top = self.max_rank
        out = [0] * (top + 1)
        for r in self.ranks:
            out[r] += 1
        return tuple(out)

    def euler_characteristic(self):
        return sum((-1) ** r for r in self.ranks)

    # -- incidence -------------------------------------------------------
    def _build_covers(self):
        faces = [[] for _ in self.cells]
        cofaces = [[] for _ in self.cells]
        ranks = self.ranks
        for y, row in enumerate(self._below):
            ry = ranks[y]
            for x in _iter_bits(row):
                if ranks[x] == ry - 1:
                    faces[y].append(x)
                    cofaces[x].append(y)
        self._faces = [tuple(f) for f in faces]
        self._cofaces = [tuple(c) for c in cofaces]

    def face_ids(self, i):
        if self._faces is None:
            self._build_covers()
        return self._faces[i]

    def coface_ids(self, i):
        if self._cofaces is None:
            self._build_covers()
        return self._cofaces[i]

    def faces(self, cell):
        return tuple(self.cells[i] for i in self.face_ids(self._idx(cell)))

    def cofaces(self, cell):
        return tuple(self.cells[i] for i in self.coface_ids(self._idx(cell)))

    def below_bits(self, i, strict=False):
        return self._below[i] if strict else self._below[i] | (1 << i)

    def above_bits(self, i, strict=False):
        return self._above[i] if strict else self._above[i] | (1 << i)

    def below(self, cell, strict=False):
        i = self._idx(cell)
        return tuple(self.cells[j] for j in _iter_bits(self.below_bits(i, strict)))

    def above(self, cell, strict=False):
        i = self._idx(cell)
        return tuple(self.cells[j] for j in _iter_bits(self.above_bits(i, strict)))

    def ids(self, bits):
        return _iter_bits(bits)

    def maximal_cells(self):
        if "max" not in self._cache:
            self._cache["max"] = tuple(c for i, c in enumerate(self.cells) if not self._above[i])
        return self._cache["max"]

    def is_pure(self):
        top = self.max_rank
        return all(self.rank(z) == top for z in self.maximal_cells())

    def meet(self, x, y):
        common = x & y
        return common if common in self.index else EMPTY

    def join(self, x, y):
        both = self.above_bits(self._idx(x)) & self.above_bits(self._idx(y))
        if not both:
            return TOP
        return self.cells[(both & -both).bit_length() - 1]

    def cells_containing(self, vertex_set):
        """All cells that contain ``vertex_set``, in canonical order."""
        vs = frozenset(vertex_set)
        if not vs:
            return self.cells
        missing = vs - self._vpos.keys()
        if missing:
            return ()
        m = self._mask(vs)
        return tuple(c for c, cm in zip(self.cells, self.masks) if cm & m == m)

    # -- derived complexes ----------------------------------------------
    def sub(self, cells):
        """Sub-complex on the given cells with inherited ranks (not validated)."""
        return CellComplex.trusted({c: self.ranks[self.index[c]] for c in cells})

    def relabel(self, mapping):
        """Rename vertices through ``mapping`` (a dict or a callable)."""
        f = mapping if callable(mapping) else mapping.__getitem__
        return CellComplex.trusted(
            {frozenset(f(v) for v in c): r for c, r in zip(self.cells, self.ranks)})

    def is_subcomplex_of(self, other):
        idx = other.index
        return all(c in idx and other.ranks[idx[c]] == r for c, r in zip(self.cells, self.ranks))

    def edges(self):
        return self.cells_of_rank(1)


def build_complex(raw_cells):
    """Validate and build a complex from ``(vertex iterable, rank)`` pairs."""
    rank_of = {}
    for verts, rank in raw_cells:
        cell = frozenset(verts)
        if not cell:
            raise EmptyCellError("empty vertex set", witness=cell)
        if cell in rank_of:
            raise DuplicateCell(f"vertex set {set(cell)!r} given twice", witness=cell)
        if not isinstance(rank, int) or rank < 0:
            raise AxiomViolation("i", (cell,), f"rank {rank!r} is not a non-negative integer")
        rank_of[cell] = rank
    return CellComplex(rank_of)


def empty_complex():
    return CellComplex({})


@dataclass(frozen=True)
class Incidence:
    faces: tuple
    cofaces: tuple
    above: tuple
    below: tuple


def incidence(K, x):
    return Incidence(K.faces(x), K.cofaces(x), K.above(x), K.below(x))


@dataclass(frozen=True)
class JoinMeet:
    meet: object
    join: object


def join_meet(K, x, y):
    K._idx(x)
    K._idx(y)
    return JoinMeet(K.meet(x, y), K.join(x, y))


def restriction(K, A):
    A = frozenset(A)
    unknown = A - K.vertex_set()
    if unknown:
        raise UnknownVertex(f"unknown vertices {sorted_labels(unknown)!r}", witness=unknown)
    return K.sub([c for c in K.cells if c <= A])


def skeleton(K, k):
    if k < 0:
        raise ValueError("skeleton index must be non-negative")
    return K.sub([c for c, r in zip(K.cells, K.ranks) if r <= k])


def submaximal_coface_counts(K):
    """Map each rank Rk-1 cell to its number of top-rank cofaces."""
    R = K.max_rank
    out = {}
    for i, r in enumerate(K.ranks):
        if r == R - 1:
            out[K.cells[i]] = sum(1 for j in K.coface_ids(i) if K.ranks[j] == R)
    return out


def boundary(K):
    keep = set()
    for y, n in submaximal_coface_counts(K).items():
        if n == 1:
            keep.update(K.below(y))
    return K.sub(keep)


def components(K, vertices=None):
    """Connected components (vertex sets) of the 1-skeleton, in label order."""
    verts = K.vertices if vertices is None else sorted_labels(vertices)
    parent = {v: v for v in verts}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for e in K.edges():
        if not e <= parent.keys():
            continue
        it = iter(e)
        a = find(next(it))
        for b in it:
            b = find(b)
            if a != b:
                parent[b] = a
    groups = {}
    for v in verts:
        groups.setdefault(find(v), []).append(v)
    comps = [frozenset(g) for g in groups.values()]
    comps.sort(key=lambda g: min(label_key(v) for v in g))
    return comps


def is_connected(K, vertices=None):
    verts = K.vertices if vertices is None else vertices
    return len(verts) > 0 and len(components(K, verts)) == 1


def boundary_components(K):
    dK = boundary(K)
    return [restriction(dK, comp) for comp in components(dK)]


def is_closed(K):
    counts = submaximal_coface_counts(K)
    return all(n == 2 for n in counts.values())


def _cell_connected_witness(K):
    for i, x in enumerate(K.cells):
        if len(x) < 2:
            continue
        edges = [K.cells[j] for j in _iter_bits(K.below_bits(i)) if K.ranks[j] == 1]
        if not _hyper_connected(x, edges):
            return x
    return None


def _hyper_connected(verts, edges):
    verts = set(verts)
    start = next(iter(verts))
    seen = {start}
    frontier = [start]
    incident = {}
    for e in edges:
        for v in e:
            incident.setdefault(v, []).append(e)
    while frontier:
        v = frontier.pop()
        for e in incident.get(v, ()):
            for w in e:
                if w not in seen:
                    seen.add(w)
                    frontier.append(w)
    return seen >= verts


def _union_find_connected(nodes, links):
    nodes = list(nodes)
    if len(nodes) <= 1:
        return True
    parent = {n: n for n in nodes}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for group in links:
        group = [g for g in group if g in parent]
        for other in group[1:]:
            a, b = find(group[0]), find(other)
            if a != b:
                parent[b] = a
    return len({find(n) for n in nodes}) == 1


def strongly_connected(K):
    """Maximal cells connected through interior sub-maximal cells."""
    if not K.cells:
        return False
    R = K.max_rank
    dK = boundary(K)
    tops = [i for i, r in enumerate(K.ranks) if r == R]
    links = []
    for i, r in enumerate(K.ranks):
        if r == R - 1 and K.cells[i] not in dK.index:
            links.append([j for j in K.coface_ids(i) if K.ranks[j] == R])
    return _union_find_connected(tops, links)


def star_connected(K, i):
    """Whether the top cells around cell ``i`` are linked through sub-maximal cells around it."""
    R = K.max_rank
    around = K.above_bits(i)
    tops = [j for j in _iter_bits(around) if K.ranks[j] == R]
    if len(tops) <= 1:
        return True
    links = []
    for j in _iter_bits(around):
        if K.ranks[j] == R - 1:
            links.append([k for k in K.coface_ids(j) if K.ranks[k] == R])
    return _union_find_connected(tops, links)


def pinch_cells(K):
    return tuple(c for i, c in enumerate(K.cells) if not star_connected(K, i))


def is_simplicial(K):
    for c, r in zip(K.cells, K.ranks):
        if r != len(c) - 1:
            return False
        if len(c) > 1 and any((c - {v}) not in K.index for v in c):
            return False
    return True


def _dual_is_simplicial(K):
    """Whether the dual of a closed complex is simplicial, without building it."""
    R = K.max_rank
    tops = {i for i, r in enumerate(K.ranks) if r == R}
    duals = set()
    for i, r in enumerate(K.ranks):
        members = frozenset(j for j in _iter_bits(K.above_bits(i)) if j in tops)
        if len(members) != R - r + 1:
            return False
        duals.add(members)
    return all(len(d) == 1 or all(d - {j} in duals for j in d) for d in duals)


@dataclass(frozen=True)
class PropertyReport:
    graph_based: bool
    pure: bool
    connected: bool
    cell_connected: bool
    local: bool
    non_singular: bool
    closed: bool
    strongly_connected: bool
    non_pinching: bool
    simplicial: bool
    simple: bool
    in_C: bool
    in_B: bool
    pinch_cells: tuple = ()
    boundary_pinch_cells: tuple = ()
    boundary_components: tuple = ()
    witnesses: dict = field(default_factory=dict)

    FLAGS = (
        "graph_based", "pure", "connected", "cell_connected", "local", "non_singular",
        "closed", "strongly_connected", "non_pinching", "simplicial", "simple", "in_C", "in_B",
    )

    def flags(self):
        return {name: getattr(self, name) for name in self.FLAGS}


def classify(K):
    if "report" in K._cache:
        return K._cache["report"]
    wit = {}
    graph_based = all(len(e) == 2 for e in K.edges())
    pure = K.is_pure()
    connected = is_connected(K)
    bad = _cell_connected_witness(K)
    cell_connected = bad is None
    if bad is not None:
        wit["cell_connected"] = bad
    local = connected and cell_connected
    counts = submaximal_coface_counts(K)
    over = [y for y, n in counts.items() if n > 2]
    non_singular = not over
    if over:
        wit["non_singular"] = over[0]
    closed = non_singular and all(n == 2 for n in counts.values())
    dK = boundary(K)
    pinches = pinch_cells(K)
    dpinches = pinch_cells(dK) if dK.cells else ()
    non_pinching = not pinches and not dpinches
    if pinches or dpinches:
        wit["non_pinching"] = (pinches + dpinches)[0]
    in_C = non_singular and non_pinching and local and pure and graph_based
    in_B = in_C and closed
    simple = False
    if in_B:
        simple = _dual_is_simplicial(K)
    comps = tuple(restriction(dK, c) for c in components(dK)) if dK.cells else ()
    report = PropertyReport(
        graph_based=graph_based, pure=pure, connected=connected,
        cell_connected=cell_connected, local=local, non_singular=non_singular,
        closed=closed, strongly_connected=strongly_connected(K),
        non_pinching=non_pinching, simplicial=is_simplicial(K), simple=simple,
        in_C=in_C, in_B=in_B, pinch_cells=pinches, boundary_pinch_cells=dpinches,
        boundary_components=comps, witnesses=wit,
    )
    K._cache["report"] = report
    return report


def local_figure(K, x):
    i = K._idx(x)
    if not K.above_bits(i, strict=True):
        raise MaximalCellHasNoFigure(f"{set(x)!r} is maximal", witness=x)
    from .boundary import midsection

    return midsection(K, restriction(K, x))[0]
