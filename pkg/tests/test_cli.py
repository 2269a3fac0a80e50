import io as stdio
import json

import pytest

from cellcx import io
from cellcx.cli import main
from cellcx.cobordism import make_cobordism
from cellcx.generators import halving_map
from cellcx.slices import halving_sequence


def run(*argv):
    out, err = stdio.StringIO(), stdio.StringIO()
    code = main([str(a) for a in argv], out, err)
    return code, out.getvalue(), err.getvalue()


def report(text):
    return dict(line.split(": ", 1) for line in text.splitlines() if ": " in line)


@pytest.fixture
def files(tmp_path):
    def gen(name, *params):
        path = tmp_path / f"{name}{''.join(map(str, params))}.json"
        code, _, _ = run("gen", name, *params, "-o", path)
        assert code == 0
        return path
    return gen


def test_gen_counts():
    for args, f in ((("simplex_boundary", 3), "4 6 4"), (("torus_grid", 4, 5), "12 24 12"), (("prism", 4), "8 12 4")):
        code, text, _ = run("gen", *args)
        assert code == 0
        K, _ = io.loads_complex(text)
        assert " ".join(map(str, K.f_vector())) == f


def test_validate_tetra(files):
    code, out, _ = run("validate", files("simplex_boundary", 3))
    assert code == 0
    rep = report(out)
    assert rep["in_B"] == "true" and rep["valid"] == "true" and rep["f_vector"] == "4 6 4"


def test_dual_torus_is_isomorphic(files, tmp_path):
    torus = files("torus_grid", 4, 5)
    dual = tmp_path / "dual.json"
    assert run("dual", torus, "-o", dual)[0] == 0
    code, out, _ = run("find-iso", torus, dual)
    assert code == 0 and report(out)["isomorphic"] == "true"


def test_find_iso_negative(files):
    code, out, _ = run("find-iso", files("cycle", 4), files("cycle", 5))
    assert code == 1 and report(out)["isomorphic"] == "false"


def test_find_iso_show(files):
    code, out, _ = run("find-iso", files("cycle", 4), files("cycle", 4), "--show")
    assert code == 0 and len(out.splitlines()) == 5


def test_bdiv_map_passes_reduction(files, tmp_path):
    out_path, map_path = tmp_path / "b.json", tmp_path / "bmap.json"
    assert run("bdiv", files("simplex_boundary", 3), "-o", out_path, "--map", map_path)[0] == 0
    code, out, _ = run("check-map", "--kind", "reduction", map_path)
    rep = report(out)
    assert code == 0
    assert all(rep[c] == "true" for c in ("r1", "r3", "r4", "r5")) and rep["passed"] == "true"


def test_check_map_failure_lists_witness(tmp_path):
    path = tmp_path / "h.json"
    path.write_text(io.dumps_map(halving_map(4)))
    code, out, _ = run("check-map", "--kind", "collapse", path)
    rep = report(out)
    assert code == 1 and rep["c1"] == "false" and "witness.c1" in rep


def test_check_map_homomorphism(tmp_path):
    path = tmp_path / "h.json"
    path.write_text(io.dumps_map(halving_map(4)))
    code, out, _ = run("check-map", "--kind", "homomorphism", path)
    assert code == 0 and report(out)["passed"] == "true"


def test_classify_wedge_reports_pinch(files):
    code, out, _ = run("classify", files("wedge_tetra"))
    rep = report(out)
    assert code == 0 and rep["non_pinching"] == "false" and "pinch_cells" in rep


def test_transition_and_midsection(files, tmp_path):
    prism = files("prism", 4)
    code, out, _ = run("transition", prism, "--component", 1)
    rep = report(out)
    assert code == 0 and rep["uniform"] == "true" and rep["transition_f_vector"] == "4 4"
    mid = tmp_path / "m.json"
    assert run("midsection", prism, "-o", mid)[0] == 0
    assert io.load_complex(str(mid))[0].f_vector() == (4, 4)
    assert run("midsection", prism, "--component", 7)[0] == 2


def test_midsection_of_closed_complex_fails(files):
    code, out, _ = run("midsection", files("simplex_boundary", 3))
    assert code == 1 and "error" in report(out)


def test_slice_round_trip_through_files(files, tmp_path):
    seq_path = tmp_path / "seq.json"
    assert run("slice-to-seq", files("prism", 4), "-o", seq_path)[0] == 0
    code, out, _ = run("seq-to-slice", seq_path)
    assert code == 0
    K, marks = io.loads_complex(out)
    assert K.f_vector() == (8, 12, 4) and set(marks) == {"J", "L"}


def test_seq_to_slice_checks_claimed_kinds(tmp_path):
    obj = json.loads(io.dumps_sequence(halving_sequence(4)))
    # rho_L still claims to be a reduction but now sends everything to one vertex
    rho_L = obj["maps"]["rho_L"]
    rho_L["assignment"] = [[x, [0]] for x, _ in rho_L["assignment"]]
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(obj))
    code, out, _ = run("seq-to-slice", path)
    assert code == 1 and report(out)["error"] == "NotSurjective"


def test_dual_cob_and_compose(tmp_path):
    from corpus import prism_n

    cob = tmp_path / "p.json"
    cob.write_text(io.dumps_cobordism(make_cobordism(prism_n(4), [0])))
    code, out, _ = run("dual-cob", cob)
    assert code == 0
    d = io.loads_cobordism(out)
    assert d.complex.f_vector() == (8, 12, 4)
    code, out, _ = run("compose", cob, cob)
    assert code == 0 and io.loads_cobordism(out).complex.f_vector() == (12, 20, 8)


def test_export_dot(files):
    code, out, _ = run("export-dot", files("cycle", 3))
    assert code == 0 and out.startswith("digraph") and out.count("->") == 6


def test_backend_flag():
    code, out, _ = run("--backend")
    assert code == 0 and out.startswith("backend: ")


@pytest.mark.parametrize("argv", [
    ("gen", "nosuch"),
    ("gen", "cycle", "x"),
    ("gen", "cycle"),
    ("validate", "/nonexistent.json"),
    ("frobnicate",),
    (),
])
def test_usage_errors_exit_2(argv):
    assert run(*argv)[0] == 2


def test_parse_error_exit_2(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"format_version": 1, "vertices": [], "cells": [], "extra": 1}')
    code, _, err = run("validate", path)
    assert code == 2 and "ParseError" in err
    path.write_text('{"format_version": 9, "vertices": [], "cells": []}')
    code, _, err = run("validate", path)
    assert code == 2 and "SchemaVersionUnsupported" in err


def test_invalid_complex_exit_1(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"format_version": 1, "vertices": ["u", "v", "w"], "cells": [
        {"vertices": ["u"], "rank": 0}, {"vertices": ["v"], "rank": 0}, {"vertices": ["w"], "rank": 0},
        {"vertices": ["u", "v", "w"], "rank": 2}]}))
    code, out, _ = run("validate", path)
    rep = report(out)
    assert code == 1 and rep["valid"] == "false" and rep["error"] == "AxiomViolation"


def test_exit_codes_are_stable(files):
    path = files("cycle", 6)
    assert [run("classify", path) for _ in range(2)][0] == run("classify", path)
