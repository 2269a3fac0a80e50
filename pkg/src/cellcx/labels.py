"""Deterministic ordering for heterogeneous vertex labels.

Labels may be ints, strings, tuples or frozensets of labels (constructions
label new vertices by the cells they come from). ``label_key`` turns any of
them into a totally ordered key.
"""

from functools import lru_cache


@lru_cache(maxsize=None)
def label_key(v):
    if isinstance(v, bool):
        return (0, int(v))
    if isinstance(v, int):
        return (0, v)
    if isinstance(v, str):
        return (1, v)
    if isinstance(v, tuple):
        return (2, tuple(label_key(e) for e in v))
    if isinstance(v, frozenset):
        return (3, tuple(sorted(label_key(e) for e in v)))
    raise TypeError(f"unsupported vertex label {v!r}")


def sorted_labels(vs):
    return sorted(vs, key=label_key)


def set_key(vs):
    """Key of a vertex set: its sorted label keys."""
    return tuple(sorted(label_key(v) for v in vs))


def show(vs):
    """Compact text for a vertex set, used in reports."""
    inner = ",".join(_show1(v) for v in sorted_labels(vs))
    return "{" + inner + "}"


def _show1(v):
    if isinstance(v, frozenset):
        return show(v)
    if isinstance(v, tuple):
        return "(" + ",".join(_show1(e) for e in v) + ")"
    return str(v)
