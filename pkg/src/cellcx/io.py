"""JSON documents for complexes, maps, slice sequences and cobordisms.

Labels are ints, strings, tuples (JSON arrays) or frozensets (``{"set": [...]}``).
Cells are listed by vertex set with an explicit rank; ranks are never inferred.
"""

import json
import os

from .complex import CellComplex, build_complex
from .errors import ParseError, SchemaVersionUnsupported
from .labels import label_key, sorted_labels
from .morphisms import CcMap

FORMAT_VERSION = 1
COMPLEX_FIELDS = {"format_version", "vertices", "cells", "marks"}
CELL_FIELDS = {"vertices", "rank"}
MAP_FIELDS = {"format_version", "domain", "codomain", "assignment", "claimed_kind"}
SEQUENCE_FIELDS = {"format_version", "complexes", "maps"}
SEQUENCE_NODES = ("J", "Jp", "M", "Lp", "L")
SEQUENCE_MAPS = {"rho_J": ("J", "Jp"), "pi_J": ("M", "Jp"), "pi_L": ("M", "Lp"), "rho_L": ("L", "Lp")}
MAP_KINDS = {"unchecked", "homomorphism", "reduction", "collapse", "isomorphism"}


# -- labels -----------------------------------------------------------------

def encode_label(v):
    if isinstance(v, bool):
        raise TypeError("booleans are not vertex labels")
    if isinstance(v, (int, str)):
        return v
    if isinstance(v, tuple):
        return [encode_label(x) for x in v]
    if isinstance(v, frozenset):
        return {"set": [encode_label(x) for x in sorted_labels(v)]}
    raise TypeError(f"unsupported label {v!r}")


def decode_label(obj, where=None):
    if isinstance(obj, bool) or obj is None or isinstance(obj, float):
        raise _schema(f"bad vertex label {obj!r}", where)
    if isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, list):
        return tuple(decode_label(x, where) for x in obj)
    if isinstance(obj, dict) and set(obj) == {"set"} and isinstance(obj["set"], list):
        return frozenset(decode_label(x, where) for x in obj["set"])
    raise _schema(f"bad vertex label {obj!r}", where)


def _cell_key(cell, rank):
    return (rank, [label_key(v) for v in sorted_labels(cell)])


# -- error positions --------------------------------------------------------

_TEXT = {"current": None}


def _position(needle):
    text = _TEXT["current"]
    if text is None or needle is None:
        return None, None
    at = text.find(json.dumps(needle))
    if at < 0:
        return None, None
    return text.count("\n", 0, at) + 1, at - (text.rfind("\n", 0, at) + 1) + 1


def _schema(message, where=None):
    line, col = _position(where)
    return ParseError(message, line=line, column=col)


def _loads(text):
    _TEXT["current"] = text
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, line=exc.lineno, column=exc.colno) from None


def _check_fields(obj, allowed, required, what):
    if not isinstance(obj, dict):
        raise _schema(f"{what} must be an object")
    for key in obj:
        if key not in allowed:
            raise _schema(f"unknown field {key!r} in {what}", key)
    for key in required:
        if key not in obj:
            raise _schema(f"missing field {key!r} in {what}")


def _check_version(obj):
    v = obj.get("format_version")
    if not isinstance(v, int) or isinstance(v, bool):
        raise _schema("format_version must be an integer", "format_version")
    if v != FORMAT_VERSION:
        raise SchemaVersionUnsupported(f"format_version {v} is not supported (expected {FORMAT_VERSION})", witness=v)


# -- complexes --------------------------------------------------------------

def complex_to_obj(K, marks=None):
    obj = {
        "format_version": FORMAT_VERSION,
        "vertices": [encode_label(v) for v in K.vertices],
        "cells": [
            {"vertices": [encode_label(v) for v in sorted_labels(c)], "rank": r}
            for c, r in sorted(zip(K.cells, K.ranks), key=lambda cr: _cell_key(*cr))
        ],
    }
    if marks:
        obj["marks"] = {name: [encode_label(v) for v in sorted_labels(vs)] for name, vs in sorted(marks.items())}
    return obj


def complex_from_obj(obj, validate=True):
    """Return ``(K, marks)``."""
    _check_fields(obj, COMPLEX_FIELDS, ("format_version", "vertices", "cells"), "complex document")
    _check_version(obj)
    if not isinstance(obj["vertices"], list) or not isinstance(obj["cells"], list):
        raise _schema("vertices and cells must be lists")
    verts = {decode_label(v, "vertices") for v in obj["vertices"]}
    raw = []
    for cell in obj["cells"]:
        _check_fields(cell, CELL_FIELDS, CELL_FIELDS, "cell")
        r = cell["rank"]
        if not isinstance(r, int) or isinstance(r, bool):
            raise _schema("cell rank must be an integer", "rank")
        if not isinstance(cell["vertices"], list):
            raise _schema("cell vertices must be a list", "vertices")
        vs = [decode_label(v, "vertices") for v in cell["vertices"]]
        raw.append((vs, r))
    K = build_complex(raw) if validate else CellComplex.trusted({frozenset(vs): r for vs, r in raw})
    if verts != K.vertex_set():
        extra = verts ^ K.vertex_set()
        raise _schema(f"vertex list disagrees with the cells on {sorted_labels(extra)!r}", "vertices")
    marks = {}
    for name, vs in (obj.get("marks") or {}).items():
        if not isinstance(vs, list):
            raise _schema(f"mark {name!r} must be a list", name)
        marks[name] = frozenset(decode_label(v, name) for v in vs)
    return K, marks


def _dumps_complex_obj(obj, indent=""):
    """Stable layout: one cell per line."""
    inner = indent + "  "
    lines = ["{", f'{inner}"format_version": {obj["format_version"]},',
             f'{inner}"vertices": {json.dumps(obj["vertices"])},']
    cells = obj["cells"]
    lines.append(f'{inner}"cells": [')
    for k, c in enumerate(cells):
        sep = "," if k + 1 < len(cells) else ""
        lines.append(f"{inner}  {json.dumps(c)}{sep}")
    lines.append(f"{inner}]" + ("," if "marks" in obj else ""))
    if "marks" in obj:
        lines.append(f'{inner}"marks": {json.dumps(obj["marks"])}')
    lines.append(indent + "}")
    return "\n".join(lines)


def dumps_complex(K, marks=None):
    return _dumps_complex_obj(complex_to_obj(K, marks)) + "\n"


def loads_complex(text, validate=True):
    return complex_from_obj(_loads(text), validate)


# -- maps -------------------------------------------------------------------

def _encode_cell(c):
    return [encode_label(v) for v in sorted_labels(c)]


def map_to_obj(phi, inline=True, refs=None):
    obj = {"format_version": FORMAT_VERSION}
    if inline:
        obj["domain"] = complex_to_obj(phi.domain)
        obj["codomain"] = complex_to_obj(phi.codomain)
    else:
        obj["domain"], obj["codomain"] = refs
    obj["assignment"] = [
        [_encode_cell(x), _encode_cell(phi.table[x])]
        for x in sorted(phi.domain.cells, key=lambda c: _cell_key(c, phi.domain.rank(c)))
    ]
    if phi.kind != "unchecked":
        obj["claimed_kind"] = phi.kind
    return obj


def _assignment(items, dom, cod, kind):
    if not isinstance(items, list):
        raise _schema("assignment must be a list of [cell, cell] pairs", "assignment")
    table = {}
    for pair in items:
        if not (isinstance(pair, list) and len(pair) == 2):
            raise _schema("assignment entries must be [cell, cell] pairs", "assignment")
        x = frozenset(decode_label(v, "assignment") for v in pair[0])
        y = frozenset(decode_label(v, "assignment") for v in pair[1])
        table[x] = y
    return CcMap(dom, cod, table, kind)


def map_from_obj(obj, base_dir="."):
    _check_fields(obj, MAP_FIELDS, ("format_version", "domain", "codomain", "assignment"), "map document")
    _check_version(obj)
    ends = []
    for key in ("domain", "codomain"):
        ref = obj[key]
        if isinstance(ref, str):
            with open(os.path.join(base_dir, ref)) as fh:
                saved = _TEXT["current"]
                ends.append(loads_complex(fh.read())[0])
                _TEXT["current"] = saved
        else:
            ends.append(complex_from_obj(ref)[0])
    kind = obj.get("claimed_kind", "unchecked")
    if kind not in MAP_KINDS:
        raise _schema(f"unknown claimed_kind {kind!r}", "claimed_kind")
    return _assignment(obj["assignment"], ends[0], ends[1], kind)


def dumps_map(phi):
    return json.dumps(map_to_obj(phi), indent=1, sort_keys=True) + "\n"


def loads_map(text, base_dir="."):
    return map_from_obj(_loads(text), base_dir)


# -- slice sequences --------------------------------------------------------

def sequence_to_obj(seq):
    nodes = dict(zip(SEQUENCE_NODES, seq.complexes()))
    maps = {"rho_J": seq.rho_J, "pi_J": seq.pi_J, "pi_L": seq.pi_L, "rho_L": seq.rho_L}
    return {
        "format_version": FORMAT_VERSION,
        "complexes": {k: complex_to_obj(v) for k, v in nodes.items()},
        "maps": {k: map_to_obj(m, inline=False, refs=SEQUENCE_MAPS[k]) for k, m in maps.items()},
    }


def sequence_from_obj(obj):
    from .slices import SliceSequence

    _check_fields(obj, SEQUENCE_FIELDS, SEQUENCE_FIELDS, "sequence document")
    _check_version(obj)
    cx = obj["complexes"]
    if not isinstance(cx, dict) or set(cx) != set(SEQUENCE_NODES):
        raise _schema(f"complexes must name exactly {SEQUENCE_NODES}", "complexes")
    nodes = {k: complex_from_obj(cx[k])[0] for k in SEQUENCE_NODES}
    if not isinstance(obj["maps"], dict) or set(obj["maps"]) != set(SEQUENCE_MAPS):
        raise _schema(f"maps must name exactly {sorted(SEQUENCE_MAPS)}", "maps")
    maps = {}
    for name, (src, dst) in SEQUENCE_MAPS.items():
        m = obj["maps"][name]
        _check_fields(m, MAP_FIELDS, ("assignment",), f"map {name}")
        kind = m.get("claimed_kind", "reduction" if name.startswith("rho") else "collapse")
        if kind not in MAP_KINDS:
            raise _schema(f"unknown claimed_kind {kind!r}", "claimed_kind")
        maps[name] = _assignment(m["assignment"], nodes[src], nodes[dst], kind)
    M = nodes["M"]
    return SliceSequence(nodes["J"], nodes["Jp"], M, nodes["Lp"], nodes["L"],
                         maps["rho_J"], maps["pi_J"], maps["pi_L"], maps["rho_L"])


def dumps_sequence(seq):
    return json.dumps(sequence_to_obj(seq), indent=1, sort_keys=True) + "\n"


def loads_sequence(text):
    return sequence_from_obj(_loads(text))


# -- cobordisms -------------------------------------------------------------

def dumps_cobordism(c):
    return dumps_complex(c.complex, {"ingoing": c.ingoing.vertex_set()})


def loads_cobordism(text):
    from .cobordism import make_cobordism

    K, marks = loads_complex(text)
    ing = marks.get("ingoing", frozenset())
    return make_cobordism(K, K.sub([c for c in K.cells if c <= ing]))


# -- files ------------------------------------------------------------------

def read_text(path):
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None


def load_complex(path):
    return loads_complex(read_text(path))


def load_map(path):
    return loads_map(read_text(path), os.path.dirname(os.path.abspath(path)))
