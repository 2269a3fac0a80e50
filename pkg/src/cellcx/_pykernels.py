"""Pure-Python incidence and axiom kernels.

Cells are vertex bitmasks (Python ints); relations are returned as one
bitset per cell over cell indices. Violation finders scan pairs in
``(outer, inner)`` ascending order and report the first hit, which the
compiled backend reproduces exactly.
"""

BACKEND = "python"


def _bits(m):
    while m:
        low = m & -m
        yield low.bit_length() - 1
        m ^= low


def _vertex_index(masks):
    holders = {}
    for i, m in enumerate(masks):
        for v in _bits(m):
            holders[v] = holders.get(v, 0) | (1 << i)
    return holders


def strict_below(masks):
    """below[y] has bit x set iff masks[x] is a proper subset of masks[y]."""
    n = len(masks)
    holders = _vertex_index(masks)
    below = [0] * n
    for x, m in enumerate(masks):
        above = -1
        for v in _bits(m):
            above &= holders[v]
        above &= ~(1 << x)
        bit = 1 << x
        for y in _bits(above):
            if masks[y] != m:
                below[y] |= bit
    return below


def transpose(rel):
    out = [0] * len(rel)
    for y, row in enumerate(rel):
        bit = 1 << y
        for x in _bits(row):
            out[x] |= bit
    return out


def _rank_masks(ranks):
    masks = {}
    for i, r in enumerate(ranks):
        masks[r] = masks.get(r, 0) | (1 << i)
    return masks


def rank_violation(below, ranks):
    for y, row in enumerate(below):
        ry = ranks[y]
        for x in _bits(row):
            if ranks[x] >= ry:
                return (x, y)
    return None


def gap_violation(below, ranks):
    above = transpose(below)
    rmask = _rank_masks(ranks)
    for y, row in enumerate(below):
        window = row | (1 << y)
        for x in _bits(row):
            up = above[x] & rmask.get(ranks[x] + 1, 0)
            if not up & window:
                return (x, y)
    return None


def intersection_violation(masks, below):
    holders = _vertex_index(masks)
    lookup = {m: i for i, m in enumerate(masks)}
    for i, mi in enumerate(masks):
        near = 0
        for v in _bits(mi):
            near |= holders[v]
        near >>= i + 1
        j = i + 1
        while near:
            if near & 1:
                mj = masks[j]
                common = mi & mj
                if common != mi and common != mj and common not in lookup:
                    return (i, j)
            near >>= 1
            j += 1
    return None


def diamond_violation(below, ranks):
    above = transpose(below)
    rmask = _rank_masks(ranks)
    for y, row in enumerate(below):
        ry = ranks[y]
        if ry < 2:
            continue
        mid = rmask.get(ry - 1, 0) & row
        for x in _bits(row & rmask.get(ry - 2, 0)):
            count = bin(above[x] & mid).count("1")
            if count != 2:
                return (x, y, count)
    return None
