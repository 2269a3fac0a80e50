"""Colour refinement and canonical certificates for coloured digraphs.

Complexes and diagrams of maps between complexes are encoded as coloured
digraphs (one node per cell). Two encodings get equal certificates exactly
when an isomorphism of the coloured digraphs exists. Search is plain
individualisation-refinement without automorphism pruning, which is enough
at the sizes used here.
"""


class Digraph:
    def __init__(self, colors, arcs):
        self.colors = list(colors)
        self.arcs = list(arcs)
        n = len(self.colors)
        self.out = [[] for _ in range(n)]
        self.inn = [[] for _ in range(n)]
        for u, v, c in self.arcs:
            self.out[u].append((c, v))
            self.inn[v].append((c, u))

    def __len__(self):
        return len(self.colors)


def _dense(values):
    order = {v: k for k, v in enumerate(sorted(set(values)))}
    return [order[v] for v in values]


def refine(g, col):
    """Stable refinement of an integer colouring; colours stay canonical."""
    col = _dense(col)
    classes = len(set(col))
    out, inn = g.out, g.inn
    while True:
        sig = [
            (col[i],
             tuple(sorted((c, col[j]) for c, j in out[i])),
             tuple(sorted((c, col[j]) for c, j in inn[i])))
            for i in range(len(col))
        ]
        new = _dense(sig)
        k = len(set(new))
        if k == classes:
            return new
        col, classes = new, k


def initial_colors(g):
    return _dense(g.colors)


def _target_class(col):
    sizes = {}
    for c in col:
        sizes[c] = sizes.get(c, 0) + 1
    multi = [c for c, s in sizes.items() if s > 1]
    return min(multi) if multi else None


def _individualize(col, v):
    new = [2 * c for c in col]
    new[v] -= 1
    return new


def canonical_labeling(g):
    """``(certificate, pos)`` where pos[node] is the node's canonical position.

    Two digraphs with equal certificates are isomorphic through
    ``node -> other_pos.index(pos[node])``.
    """
    best = best_pos = None
    stack = [refine(g, initial_colors(g))]
    while stack:
        col = stack.pop()
        target = _target_class(col)
        if target is None:
            pos = col  # discrete: colour is the position
            order = sorted(range(len(col)), key=col.__getitem__)
            cert = (
                tuple(g.colors[i] for i in order),
                tuple(sorted((pos[u], pos[v], c) for u, v, c in g.arcs)),
            )
            if best is None or cert < best:
                best, best_pos = cert, pos
            continue
        for v in reversed([i for i, c in enumerate(col) if c == target]):
            stack.append(refine(g, _individualize(col, v)))
    return best, best_pos


def certificate(g):
    """Canonical certificate: minimal relabelled encoding over all leaves."""
    return canonical_labeling(g)[0]


def complex_digraph(K, tag=0):
    """Cells of K as nodes coloured by (tag, rank), with face-to-coface arcs."""
    colors = [(tag, r) for r in K.ranks]
    arcs = []
    for i in range(len(K.cells)):
        for j in K.coface_ids(i):
            arcs.append((i, j, 0))
    return colors, arcs


def diagram_digraph(complexes, maps):
    """Encode complexes plus maps ``(src, dst, table)`` between them.

    Map arcs are coloured by the map's position so that distinct maps stay
    distinguishable.
    """
    colors, arcs, offsets = [], [], []
    for t, K in enumerate(complexes):
        offsets.append(len(colors))
        c, a = complex_digraph(K, t)
        base = offsets[-1]
        colors.extend(c)
        arcs.extend((u + base, v + base, 0) for u, v, _ in a)
    for m, (s, d, table) in enumerate(maps):
        S, D = complexes[s], complexes[d]
        for x, y in table.items():
            arcs.append((offsets[s] + S.index[x], offsets[d] + D.index[y], m + 1))
    return Digraph(colors, arcs)


def complex_certificate(K):
    if "cert" not in K._cache:
        colors, arcs = complex_digraph(K)
        K._cache["cert"] = certificate(Digraph(colors, arcs))
    return K._cache["cert"]


def diagram_certificate(complexes, maps):
    return certificate(diagram_digraph(complexes, maps))


def diagram_isomorphism(first, second):
    """Cell tables matching two diagrams node by node, or None.

    Each argument is ``(complexes, maps)``; the result lists one
    ``{cell: cell}`` table per complex.
    """
    ga, gb = diagram_digraph(*first), diagram_digraph(*second)
    ca, pa = canonical_labeling(ga)
    cb, pb = canonical_labeling(gb)
    if ca != cb:
        return None
    at = {p: node for node, p in enumerate(pb)}
    cells_b = [c for K in second[0] for c in K.cells]
    out, k = [], 0
    for K in first[0]:
        out.append({x: cells_b[at[pa[k + i]]] for i, x in enumerate(K.cells)})
        k += len(K.cells)
    return out
