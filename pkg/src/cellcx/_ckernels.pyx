# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled incidence and axiom kernels.

Same contract as ``_pykernels``: bitmask ints in, first violation out, with
identical scan order. Bitsets are unpacked into flat uint64 word arrays.
"""

from array import array
from libc.stdint cimport uint64_t

BACKEND = "cython"

cdef extern int __builtin_popcountll(unsigned long long) nogil
cdef extern int __builtin_ctzll(unsigned long long) nogil


cdef int _width(values):
    cdef int top = 0
    for v in values:
        if v.bit_length() > top:
            top = v.bit_length()
    return max(1, (top + 63) // 64)


cdef object _pack(values, int w):
    buf = b"".join(v.to_bytes(w * 8, "little") for v in values)
    out = array("Q")
    out.frombytes(buf)
    return out


cdef list _unpack(uint64_t[::1] words, int n, int w):
    raw = bytes(memoryview(words).cast("B"))
    step = w * 8
    return [int.from_bytes(raw[i * step:(i + 1) * step], "little") for i in range(n)]


cdef void _transpose(uint64_t[::1] src, uint64_t[::1] dst, int n, int w) nogil:
    cdef int y, x, k
    cdef uint64_t word
    for y in range(n):
        for k in range(w):
            word = src[y * w + k]
            while word:
                x = k * 64 + __builtin_ctzll(word)
                dst[x * w + (y >> 6)] |= (<uint64_t>1) << (y & 63)
                word &= word - 1


def strict_below(masks):
    cdef int n = len(masks)
    if n == 0:
        return []
    cdef int vw = _width(masks)
    cdef int cw = (n + 63) // 64
    cdef int nv = vw * 64
    cdef uint64_t[::1] m = _pack(masks, vw)
    out = array("Q", bytes(8 * n * cw))
    cdef uint64_t[::1] below = out
    # holders[v] is the set of cells containing vertex v
    hold_buf = array("Q", bytes(8 * nv * cw))
    cdef uint64_t[::1] holders = hold_buf
    acc_buf = array("Q", bytes(8 * cw))
    cdef uint64_t[::1] acc = acc_buf
    cdef int x, y, k, j, v
    cdef uint64_t word, vbits
    cdef bint same
    with nogil:
        for x in range(n):
            for k in range(vw):
                vbits = m[x * vw + k]
                while vbits:
                    v = k * 64 + __builtin_ctzll(vbits)
                    holders[v * cw + (x >> 6)] |= (<uint64_t>1) << (x & 63)
                    vbits &= vbits - 1
        for x in range(n):
            for j in range(cw):
                acc[j] = <uint64_t>-1
            for k in range(vw):
                vbits = m[x * vw + k]
                while vbits:
                    v = k * 64 + __builtin_ctzll(vbits)
                    for j in range(cw):
                        acc[j] &= holders[v * cw + j]
                    vbits &= vbits - 1
            for j in range(cw):
                word = acc[j]
                while word:
                    y = j * 64 + __builtin_ctzll(word)
                    word &= word - 1
                    if y >= n or y == x:
                        continue
                    same = True
                    for k in range(vw):
                        if m[x * vw + k] != m[y * vw + k]:
                            same = False
                            break
                    if not same:
                        below[y * cw + (x >> 6)] |= (<uint64_t>1) << (x & 63)
    return _unpack(below, n, cw)


def transpose(rel):
    cdef int n = len(rel)
    if n == 0:
        return []
    cdef int cw = (n + 63) // 64
    cdef uint64_t[::1] src = _pack(rel, cw)
    out = array("Q", bytes(8 * n * cw))
    cdef uint64_t[::1] dst = out
    with nogil:
        _transpose(src, dst, n, cw)
    return _unpack(dst, n, cw)


def rank_violation(below, ranks):
    cdef int n = len(below)
    if n == 0:
        return None
    cdef int cw = (n + 63) // 64
    cdef uint64_t[::1] b = _pack(below, cw)
    cdef long[::1] rk = array("l", ranks)
    cdef int y, x, k
    cdef uint64_t word
    cdef int hit_x = -1, hit_y = -1
    with nogil:
        for y in range(n):
            for k in range(cw):
                word = b[y * cw + k]
                while word:
                    x = k * 64 + __builtin_ctzll(word)
                    if rk[x] >= rk[y]:
                        hit_x = x
                        hit_y = y
                        break
                    word &= word - 1
                if hit_y >= 0:
                    break
            if hit_y >= 0:
                break
    return None if hit_y < 0 else (hit_x, hit_y)


cdef object _rank_rows(long[::1] rk, int n, int cw):
    """One bitset row per rank from ``low`` to ``top``, plus an empty row on each side."""
    cdef long top = rk[0], low = rk[0]
    cdef int i
    for i in range(n):
        if rk[i] > top:
            top = rk[i]
        if rk[i] < low:
            low = rk[i]
    out = array("Q", bytes(8 * (top - low + 3) * cw))
    cdef uint64_t[::1] rows = out
    for i in range(n):
        rows[(rk[i] - low + 1) * cw + (i >> 6)] |= (<uint64_t>1) << (i & 63)
    return out, low, top


cdef inline long _row(long r, long low, long top) nogil:
    # row offset for rank r; ranks outside [low, top] hit an empty row
    if r < low or r > top:
        return 0
    return r - low + 1


def gap_violation(below, ranks):
    cdef int n = len(below)
    if n == 0:
        return None
    cdef int cw = (n + 63) // 64
    cdef uint64_t[::1] b = _pack(below, cw)
    ab = array("Q", bytes(8 * n * cw))
    cdef uint64_t[::1] a = ab
    cdef long[::1] rk = array("l", ranks)
    rows_obj, low_obj, top_obj = _rank_rows(rk, n, cw)
    cdef uint64_t[::1] rows = rows_obj
    cdef long low = low_obj, top = top_obj
    cdef int y, x, k, j
    cdef uint64_t word, hit
    cdef int hit_x = -1, hit_y = -1
    with nogil:
        _transpose(b, a, n, cw)
        for y in range(n):
            for k in range(cw):
                word = b[y * cw + k]
                while word:
                    x = k * 64 + __builtin_ctzll(word)
                    hit = 0
                    if rk[x] + 1 <= top:
                        for j in range(cw):
                            hit |= a[x * cw + j] & rows[_row(rk[x] + 1, low, top) * cw + j] & b[y * cw + j]
                        # y itself may be the covering cell
                        if rk[y] == rk[x] + 1:
                            hit = 1
                    if not hit:
                        hit_x = x
                        hit_y = y
                        break
                    word &= word - 1
                if hit_y >= 0:
                    break
            if hit_y >= 0:
                break
    return None if hit_y < 0 else (hit_x, hit_y)


def intersection_violation(masks, below):
    cdef int n = len(masks)
    if n == 0:
        return None
    cdef int vw = _width(masks)
    cdef int cw = (n + 63) // 64
    cdef uint64_t[::1] m = _pack(masks, vw)
    cdef uint64_t[::1] b = _pack(below, cw)
    cdef int i, j, k, c, c2, common_bits, kk
    cdef uint64_t word, mi, mj
    cdef bint meets, in_i, in_j, found
    cdef int hit_i = -1, hit_j = -1
    with nogil:
        for i in range(n):
            for j in range(i + 1, n):
                meets = False
                in_i = True
                in_j = True
                common_bits = 0
                for k in range(vw):
                    mi = m[i * vw + k]
                    mj = m[j * vw + k]
                    word = mi & mj
                    if word:
                        meets = True
                    if word != mi:
                        in_i = False
                    if word != mj:
                        in_j = False
                    common_bits += __builtin_popcountll(word)
                if not meets or in_i or in_j:
                    continue
                found = False
                for k in range(cw):
                    word = b[i * cw + k] & b[j * cw + k]
                    while word:
                        c = k * 64 + __builtin_ctzll(word)
                        kk = 0
                        for c2 in range(vw):
                            kk += __builtin_popcountll(m[c * vw + c2])
                        if kk == common_bits:
                            found = True
                            break
                        word &= word - 1
                    if found:
                        break
                if not found:
                    hit_i = i
                    hit_j = j
                    break
            if hit_i >= 0:
                break
    return None if hit_i < 0 else (hit_i, hit_j)


def diamond_violation(below, ranks):
    cdef int n = len(below)
    if n == 0:
        return None
    cdef int cw = (n + 63) // 64
    cdef uint64_t[::1] b = _pack(below, cw)
    ab = array("Q", bytes(8 * n * cw))
    cdef uint64_t[::1] a = ab
    cdef long[::1] rk = array("l", ranks)
    rows_obj, low_obj, top_obj = _rank_rows(rk, n, cw)
    cdef uint64_t[::1] rows = rows_obj
    cdef long low = low_obj, top = top_obj
    cdef int y, x, k, j, count
    cdef uint64_t word
    cdef int hit_x = -1, hit_y = -1, hit_c = 0
    with nogil:
        _transpose(b, a, n, cw)
        for y in range(n):
            if rk[y] < 2:
                continue
            for k in range(cw):
                word = b[y * cw + k] & rows[_row(rk[y] - 2, low, top) * cw + k]
                while word:
                    x = k * 64 + __builtin_ctzll(word)
                    count = 0
                    for j in range(cw):
                        count += __builtin_popcountll(
                            a[x * cw + j] & b[y * cw + j] & rows[_row(rk[y] - 1, low, top) * cw + j])
                    if count != 2:
                        hit_x = x
                        hit_y = y
                        hit_c = count
                        break
                    word &= word - 1
                if hit_y >= 0:
                    break
            if hit_y >= 0:
                break
    return None if hit_y < 0 else (hit_x, hit_y, hit_c)
