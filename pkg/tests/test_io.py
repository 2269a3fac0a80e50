import json

import pytest

from corpus import closed_corpus, prism_n, trap
from cellcx import io
from cellcx.cobordism import make_cobordism
from cellcx.errors import AxiomViolation, ParseError, SchemaVersionUnsupported
from cellcx.generators import bitetra, halving_map, path
from cellcx.morphisms import barycentric_subdivision
from cellcx.slices import halving_sequence, slice_to_sequence

CORPUS = closed_corpus() + [("prism", prism_n(4)), ("trapezoid", trap()), ("bitetra", bitetra())]


@pytest.mark.parametrize("name,K", CORPUS, ids=[n for n, _ in CORPUS])
def test_complex_round_trip(name, K):
    text = io.dumps_complex(K)
    back, marks = io.loads_complex(text)
    assert back == K and back.vertices == K.vertices and marks == {}
    assert io.dumps_complex(back) == text


def test_mixed_labels_round_trip():
    B, _ = barycentric_subdivision(path(2))  # vertices are frozensets
    T = trap()                                # vertices are tuples
    for K in (B, T, prism_n(3).relabel(lambda v: f"v{v}")):
        assert io.loads_complex(io.dumps_complex(K))[0] == K


def test_marks_round_trip():
    K = prism_n(4)
    marks = {"J": frozenset(range(4))}
    back, got = io.loads_complex(io.dumps_complex(K, marks))
    assert got == marks


def test_one_cell_per_line():
    text = io.dumps_complex(path(1))
    lines = text.splitlines()
    assert sum(1 for ln in lines if '"rank"' in ln) == 3


def test_unsorted_input_is_canonicalized():
    doc = {
        "format_version": 1,
        "vertices": [2, 1],
        "cells": [{"rank": 1, "vertices": [2, 1]}, {"vertices": [2], "rank": 0}, {"vertices": [1], "rank": 0}],
    }
    K, _ = io.loads_complex(json.dumps(doc))
    obj = json.loads(io.dumps_complex(K))
    assert obj["vertices"] == [1, 2]
    assert obj["cells"] == [{"vertices": [1], "rank": 0}, {"vertices": [2], "rank": 0},
                            {"vertices": [1, 2], "rank": 1}]


def test_unknown_field_reports_position():
    text = '{\n  "format_version": 1,\n  "vertices": [0],\n  "colour": "red",\n  "cells": [{"vertices": [0], "rank": 0}]\n}\n'
    with pytest.raises(ParseError) as exc:
        io.loads_complex(text)
    assert exc.value.line == 4 and exc.value.column == 3
    assert "colour" in str(exc.value)


def test_unknown_cell_field():
    text = '{"format_version": 1, "vertices": [0], "cells": [{"vertices": [0], "rank": 0, "dim": 0}]}'
    with pytest.raises(ParseError):
        io.loads_complex(text)


def test_malformed_json_reports_position():
    with pytest.raises(ParseError) as exc:
        io.loads_complex('{\n  "format_version": 1,\n  "vertices": [0,\n}')
    assert exc.value.line == 4


def test_future_version_rejected():
    text = '{"format_version": 2, "vertices": [], "cells": []}'
    with pytest.raises(SchemaVersionUnsupported):
        io.loads_complex(text)


@pytest.mark.parametrize("doc", [
    {"format_version": 1, "vertices": [0], "cells": [{"vertices": [0], "rank": "0"}]},
    {"format_version": 1, "vertices": [0, 1], "cells": [{"vertices": [0], "rank": 0}]},
    {"format_version": 1, "vertices": [0.5], "cells": [{"vertices": [0.5], "rank": 0}]},
    {"format_version": 1, "vertices": [0]},
    {"format_version": True, "vertices": [], "cells": []},
])
def test_schema_errors(doc):
    with pytest.raises(ParseError):
        io.loads_complex(json.dumps(doc))


def test_invalid_complex_is_an_axiom_error():
    doc = {"format_version": 1, "vertices": [0, 1],
           "cells": [{"vertices": [0], "rank": 0}, {"vertices": [1], "rank": 0}, {"vertices": [0, 1], "rank": 0}]}
    with pytest.raises(AxiomViolation):
        io.loads_complex(json.dumps(doc))


def test_map_round_trip():
    for phi in (halving_map(4), barycentric_subdivision(path(2))[1]):
        back = io.loads_map(io.dumps_map(phi))
        assert back == phi and back.kind == phi.kind


def test_map_with_file_references(tmp_path):
    h = halving_map(4)
    (tmp_path / "c8.json").write_text(io.dumps_complex(h.domain))
    (tmp_path / "c4.json").write_text(io.dumps_complex(h.codomain))
    obj = io.map_to_obj(h, inline=False, refs=("c8.json", "c4.json"))
    path_ = tmp_path / "h.json"
    path_.write_text(json.dumps(obj))
    assert io.load_map(str(path_)) == h


def test_sequence_round_trip():
    for seq in (halving_sequence(4), slice_to_sequence(trap())):
        back = io.loads_sequence(io.dumps_sequence(seq))
        assert back.certificate() == seq.certificate()
        assert back.complexes() == seq.complexes()


def test_cobordism_round_trip():
    c = make_cobordism(prism_n(4), [0])
    back = io.loads_cobordism(io.dumps_cobordism(c))
    assert back == c


def test_missing_file():
    with pytest.raises(ParseError):
        io.read_text("/nonexistent/file.json")
