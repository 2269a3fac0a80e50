"""States built from semi-sequences, sequences of states, their realization as
causal cobordisms, and the functors C, T and P.

A semi-sequence is M -pi-> T <-rho- X (collapse then reduction). A slice state
holds two semis sharing their top M; a connecting state holds two semis sharing
their bottom X. Equality is structural, via canonical certificates.
"""

from dataclasses import dataclass
from functools import cached_property

from . import canon
from .boundary import compatible, reflective
from .cobordism import Glue, compose_cobordisms, empty_cobordism, make_cobordism
from .complex import CellComplex
from .duality import dual_complex, dual_map
from .errors import EndpointMismatch, FragmentInvalid, PreconditionFailed, RelationViolated
from .morphisms import CcMap, compose, find_isomorphism
from .slices import Slice, SliceSequence, check_slice, sequence_labels, sequence_to_slice, slice_to_sequence

SLICE, CONNECTING, EMPTY = "slice", "connecting", "empty"


@dataclass(frozen=True, eq=False)
class Semi:
    top: CellComplex
    collapse: CcMap
    mid: CellComplex
    reduction: CcMap
    bottom: CellComplex

    def __post_init__(self):
        c, r = self.collapse, self.reduction
        if c.domain != self.top or c.codomain != self.mid:
            raise FragmentInvalid("collapse must map top onto mid", witness="collapse")
        if r.domain != self.bottom or r.codomain != self.mid:
            raise FragmentInvalid("reduction must map bottom onto mid", witness="reduction")
        ranks = {self.top.max_rank, self.mid.max_rank, self.bottom.max_rank}
        if len(ranks) != 1:
            raise FragmentInvalid("semi-sequence complexes must share one rank", witness=sorted(ranks))

    def diagram(self):
        return [self.top, self.mid, self.bottom], [(0, 1, self.collapse.table), (2, 1, self.reduction.table)]

    @cached_property
    def certificate(self):
        return canon.diagram_certificate(*self.diagram())

    def __eq__(self, other):
        return isinstance(other, Semi) and self.certificate == other.certificate

    def __hash__(self):
        return hash(self.certificate)

    def dual(self):
        """X* -rho*-> T* <-pi*- M*."""
        return Semi(dual_complex(self.bottom)[0], dual_map(self.reduction), dual_complex(self.mid)[0],
                    dual_map(self.collapse), dual_complex(self.top)[0])

    def rebased(self, bottom_iso):
        """Same semi with its bottom replaced through an isomorphism X' -> X."""
        return Semi(self.top, self.collapse, self.mid, compose(self.reduction, bottom_iso), bottom_iso.domain)


@dataclass(frozen=True, eq=False)
class State:
    kind: str
    left: Semi = None
    right: Semi = None
    complex: CellComplex = None   # only for the empty state (J - J)

    @property
    def labels(self):
        if self.kind == SLICE:
            return (self.left.bottom, self.left.top, self.right.bottom)
        if self.kind == CONNECTING:
            return (self.left.top, self.left.bottom, self.right.top)
        return (self.complex,)

    def diagram(self):
        if self.kind == EMPTY:
            return [self.complex], []
        l, r = self.left, self.right
        if self.kind == SLICE:
            nodes = [l.bottom, l.mid, l.top, r.mid, r.bottom]
            maps = [(0, 1, l.reduction.table), (2, 1, l.collapse.table),
                    (2, 3, r.collapse.table), (4, 3, r.reduction.table)]
        else:
            nodes = [l.top, l.mid, l.bottom, r.mid, r.top]
            maps = [(0, 1, l.collapse.table), (2, 1, l.reduction.table),
                    (2, 3, r.reduction.table), (4, 3, r.collapse.table)]
        return nodes, maps

    @cached_property
    def certificate(self):
        return (self.kind, canon.diagram_certificate(*self.diagram()))

    def __eq__(self, other):
        return isinstance(other, State) and self.certificate == other.certificate

    def __hash__(self):
        return hash(self.certificate)

    def __repr__(self):
        f = "/".join(str(c.f_vector()) for c in self.labels)
        return {SLICE: f"<{f}|", CONNECTING: f"|{f}>", EMPTY: f"<{f} - {f}|"}[self.kind]

    def slice_sequence(self):
        l, r = self.left, self.right
        return SliceSequence(l.bottom, l.mid, l.top, r.mid, r.bottom,
                             l.reduction, l.collapse, r.collapse, r.reduction)


def _invalid(reason, witness=None):
    raise FragmentInvalid(reason, witness=witness)


def _check_semi_kinds(semi):
    if not semi.collapse.is_collapse():
        _invalid("semi-sequence needs a collapse", "collapse")
    if not semi.reduction.is_reduction():
        _invalid("semi-sequence needs a reduction", "reduction")


def slice_state(left, right):
    if left.top != right.top or left.top.rank_of != right.top.rank_of:
        _invalid("slice state semis must share their top complex", "top")
    right = Semi(left.top, CcMap(left.top, right.mid, right.collapse.table, right.collapse.kind),
                 right.mid, right.reduction, right.bottom)
    st = State(SLICE, left, right)
    for s in (left, right):
        _check_semi_kinds(s)
    try:
        st.slice_sequence().validate()
    except RelationViolated as exc:
        raise FragmentInvalid(f"not a slice sequence: {exc}", witness=exc.witness) from exc
    return st


def connecting_state(left, right):
    """Two semis sharing their bottom. If the bottoms are isomorphic but not
    equal, ``right`` is rebased onto ``left.bottom`` through some isomorphism."""
    for s in (left, right):
        _check_semi_kinds(s)
    if left.bottom != right.bottom:
        table = find_isomorphism(left.bottom, right.bottom)
        if table is None:
            _invalid("connecting state semis must share their bottom complex", "bottom")
        right = right.rebased(CcMap(left.bottom, right.bottom, table, "isomorphism"))
    for side, s in (("left", left), ("right", right)):
        v = compatible(s.reduction, s.collapse)
        if not v.holds:
            _invalid(f"{side} reduction is not compatible with its collapse", (v.clause, v.witness))
    v = reflective(left.reduction, right.reduction)
    if v.status == "fails":
        _invalid("the two reductions are not reflective", (v.clause, v.witness))
    return State(CONNECTING, left, right)


def empty_state(J):
    return State(EMPTY, complex=J)


def make_state(kind, triple, maps):
    """Build a state from its three labels and its four maps, listed left to right.

    slice:      (J, M, L) with maps rho_J, pi_J, pi_L, rho_L
    connecting: (M, L, M') with maps pi, rho, rho', pi'
    """
    if len(triple) != 3 or len(maps) != 4:
        _invalid("a state needs three labels and four maps", (len(triple), len(maps)))
    ranks = {c.max_rank for c in triple}
    if len(ranks) != 1:
        _invalid("state labels must share one rank", sorted(ranks))
    a, b, c = triple
    m1, m2, m3, m4 = maps
    if kind == SLICE:
        left = Semi(b, m2, m2.codomain, m1, a)
        right = Semi(b, m3, m3.codomain, m4, c)
        return slice_state(left, right)
    if kind == CONNECTING:
        left = Semi(a, m1, m1.codomain, m2, b)
        right = Semi(c, m4, m4.codomain, m3, b)
        return connecting_state(left, right)
    _invalid(f"unknown state kind {kind!r}", kind)


def state_of_sequence(seq):
    return slice_state(Semi(seq.M, seq.pi_J, seq.Jp, seq.rho_J, seq.J),
                       Semi(seq.M, seq.pi_L, seq.Lp, seq.rho_L, seq.L))


def state_of_slice(S):
    return state_of_sequence(slice_to_sequence(S if isinstance(S, Slice) else check_slice(S)))


def connecting_between(a, b):
    """|M, L, M'> joining slice state a on the left to slice state b on the right."""
    return connecting_state(a.right, b.left)


# -- sequences ------------------------------------------------------------

def _junction_failure(states):
    solid = [(k, s) for k, s in enumerate(states) if s.kind != EMPTY]
    for (i, s), (_, t) in zip(solid, solid[1:]):
        if s.kind == t.kind:
            return i, "kinds must alternate"
        if s.right != t.left:
            return i, "shared semi-sequence differs"
    return None


@dataclass(frozen=True, eq=False)
class StateSequence:
    states: tuple

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(self.states))
        if not self.states:
            raise FragmentInvalid("a state sequence cannot be empty")
        bad = _junction_failure(self.states)
        if bad is not None:
            raise EndpointMismatch(f"junction after state {bad[0]}: {bad[1]}", witness=bad[0])

    def __len__(self):
        return len(self.states)

    @property
    def image(self):
        """Im: the first state."""
        return self.states[0]

    @property
    def domain(self):
        """D: the last state."""
        return self.states[-1]

    def hom(self):
        """(domain, image): the sequence as an arrow domain -> image."""
        return self.domain, self.image

    def hom_kind(self):
        return self.domain.kind, self.image.kind

    @cached_property
    def certificate(self):
        return tuple(s.certificate for s in self.states)

    def __eq__(self, other):
        return isinstance(other, StateSequence) and self.certificate == other.certificate

    def __hash__(self):
        return hash(self.certificate)

    def __repr__(self):
        return " ".join(map(repr, self.states))


def identity_sequence(state):
    return StateSequence((state,))


def compose_sequences(sigma, gamma):
    """Concatenate, counting the shared state once. Empty states are transparent."""
    a, b = sigma.states[-1], gamma.states[0]
    if a.kind == EMPTY or b.kind == EMPTY:
        return StateSequence(sigma.states + gamma.states)
    if a != b:
        raise EndpointMismatch("last state of the first sequence differs from the first of the second")
    return StateSequence(sigma.states + gamma.states[1:])


# -- functors ---------------------------------------------------------------

FLIP = {SLICE: CONNECTING, CONNECTING: SLICE}


def _state(kind, left, right):
    return slice_state(left, right) if kind == SLICE else connecting_state(left, right)


def functor_T(state):
    if state.kind == EMPTY:
        return state
    return _state(state.kind, state.right, state.left)


def functor_C(state):
    if state.kind == EMPTY:
        return empty_state(dual_complex(state.complex)[0])
    return _state(FLIP[state.kind], state.right.dual(), state.left.dual())


def functor_P(state):
    if state.kind == EMPTY:
        return empty_state(dual_complex(state.complex)[0])
    return _state(FLIP[state.kind], state.left.dual(), state.right.dual())


FUNCTORS = {"C": (functor_C, True), "T": (functor_T, True), "P": (functor_P, False)}


def apply_functor(name, sigma):
    try:
        fn, reverse = FUNCTORS[name]
    except KeyError:
        raise PreconditionFailed(f"unknown functor {name!r}", witness=name) from None
    states = [fn(s) for s in sigma.states]
    return StateSequence(states[::-1] if reverse else states)


def map_state(name, state):
    return FUNCTORS[name][0](state)


# -- realization ------------------------------------------------------------

def semi_isomorphism(a, b):
    """Cell tables (top, mid, bottom) carrying semi a onto semi b, or None."""
    return canon.diagram_isomorphism(a.diagram(), b.diagram())


def realize(sigma):
    """Glue the slice states of sigma left to right into one cobordism.

    Each slice is realized with its left component ingoing. Consecutive slices
    are glued through the bottom of the connecting state between them.
    """
    states = [s for s in sigma.states if s.kind != EMPTY]
    if not states:
        return empty_cobordism(sigma.states[0].complex)
    if all(s.kind == CONNECTING for s in states):
        raise PreconditionFailed("a sequence without slice states has no realization")
    out = prev = None
    for k, s in enumerate(states):
        if s.kind != SLICE:
            continue
        seq = s.slice_sequence()
        S = sequence_to_slice(seq, validate=False)
        fJ, fL = sequence_labels(seq)
        cob = make_cobordism(S.complex, S.components[0])
        if out is None:
            out, where = cob, {v: fL(v) for v in seq.L.vertices}
        else:
            conn = states[k - 1]
            L = prev.right.bottom
            g1 = semi_isomorphism(prev.right, conn.left)[2]
            back = {y: x for x, y in semi_isomorphism(s.left, conn.right)[2].items()}
            outs = out.outgoing_components()
            want = frozenset(where.values())
            idx = next(i for i, c in enumerate(outs) if c.vertex_set() == want)
            table = {frozenset(where[v] for v in x): frozenset(fJ(v) for v in back[g1[x]]) for x in L.cells}
            rho_b = CcMap(outs[idx], cob.ingoing, table, "isomorphism")
            out = compose_cobordisms(out, cob, Glue(a_out=idx, b_in=0, rho_b=rho_b))
            f = out.origin["b_vertices"]
            where = {v: f[fL(v)] for v in seq.L.vertices}
        prev = s
    return out
