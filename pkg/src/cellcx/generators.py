"""Canonical instances with integer vertex labels."""

from itertools import combinations

from .complex import build_complex
from .errors import BadParams, UnknownGenerator


def _simplex_cells(verts, proper):
    verts = tuple(verts)
    top = len(verts) - (1 if proper else 0)
    for k in range(1, top + 1):
        for sub in combinations(verts, k):
            yield sub, k - 1


def simplex_boundary(d):
    """Boundary of the d-simplex (d+1 vertices)."""
    if d < 1:
        raise BadParams("simplex_boundary needs d >= 1")
    return build_complex(_simplex_cells(range(d + 1), proper=True))


def simplex(d):
    if d < 0:
        raise BadParams("simplex needs d >= 0")
    return build_complex(_simplex_cells(range(d + 1), proper=False))


def cycle(n):
    if n < 3:
        raise BadParams("cycle needs n >= 3")
    cells = [((i,), 0) for i in range(n)]
    cells += [((i, (i + 1) % n), 1) for i in range(n)]
    return build_complex(cells)


def path(n):
    """Path with n edges and n+1 vertices."""
    if n < 1:
        raise BadParams("path needs n >= 1")
    cells = [((i,), 0) for i in range(n + 1)]
    cells += [((i, i + 1), 1) for i in range(n)]
    return build_complex(cells)


def torus_grid(r, c):
    """An r x c lattice-point grid with opposite sides identified.

    The result has (r-1)(c-1) vertices and as many unit squares.
    """
    p, q = r - 1, c - 1
    if p < 3 or q < 3:
        raise BadParams("torus_grid needs r, c >= 4 so the identified grid is a cell complex")

    def v(i, j):
        return (i % p) * q + (j % q)

    cells = [((v(i, j),), 0) for i in range(p) for j in range(q)]
    for i in range(p):
        for j in range(q):
            cells.append(((v(i, j), v(i, j + 1)), 1))
            cells.append(((v(i, j), v(i + 1, j)), 1))
            cells.append(((v(i, j), v(i, j + 1), v(i + 1, j), v(i + 1, j + 1)), 2))
    return build_complex(cells)


def prism(n):
    """Cylinder over the n-cycle: bottom ring 0..n-1, top ring n..2n-1."""
    if n < 3:
        raise BadParams("prism needs n >= 3")
    cells = [((i,), 0) for i in range(2 * n)]
    for i in range(n):
        j = (i + 1) % n
        cells.append(((i, j), 1))
        cells.append(((n + i, n + j), 1))
        cells.append(((i, n + i), 1))
        cells.append(((i, j, n + i, n + j), 2))
    return build_complex(cells)


def bitetra():
    """Two tetrahedra sharing the triangle {0,1,2}; apexes 3 and 4."""
    seen = {}
    for tet in ((0, 1, 2, 3), (0, 1, 2, 4)):
        for sub, r in _simplex_cells(tet, proper=False):
            seen[frozenset(sub)] = r
    return build_complex(seen.items())


def wedge_tetra():
    """Two tetrahedron boundaries sharing only vertex 0."""
    seen = {}
    for tet in ((0, 1, 2, 3), (0, 4, 5, 6)):
        for sub, r in _simplex_cells(tet, proper=True):
            seen[frozenset(sub)] = r
    return build_complex(seen.items())


def halving_map(n):
    """Reduction C_2n -> C_n contracting each pair of edges 2k,2k+1 onto edge k.

    Even vertex 2k goes to vertex k, odd vertex 2k+1 to the edge {k, k+1}.
    """
    from .morphisms import CcMap

    big, small = cycle(2 * n), cycle(n)
    table = {}
    for k in range(n):
        e = frozenset({k, (k + 1) % n})
        table[frozenset({2 * k})] = frozenset({k})
        table[frozenset({2 * k + 1})] = e
        table[frozenset({2 * k, 2 * k + 1})] = e
        table[frozenset({2 * k + 1, (2 * k + 2) % (2 * n)})] = e
    return CcMap(big, small, table, "reduction")


def trapezoid(n=4):
    """Slice between C_2n and C_n built from the halving sequence."""
    from .slices import halving_sequence, sequence_to_slice

    return sequence_to_slice(halving_sequence(n)).complex


GENERATORS = {
    "simplex_boundary": (simplex_boundary, 1),
    "cycle": (cycle, 1),
    "path": (path, 1),
    "torus_grid": (torus_grid, 2),
    "prism": (prism, 1),
    "bitetra": (bitetra, 0),
    "wedge_tetra": (wedge_tetra, 0),
    "trapezoid": (trapezoid, 1),
}


def generate(name, params=()):
    try:
        fn, arity = GENERATORS[name]
    except KeyError:
        raise UnknownGenerator(f"unknown generator {name!r}; known: {sorted(GENERATORS)}") from None
    params = list(params)
    if len(params) != arity:
        raise BadParams(f"{name} takes {arity} integer parameter(s), got {len(params)}")
    try:
        ints = [int(p) for p in params]
    except (TypeError, ValueError):
        raise BadParams(f"{name} parameters must be integers: {params!r}") from None
    return fn(*ints)
