"""Command-line interface. Reports are ``key: value`` lines on stdout.

Exit status: 0 success, 1 validation failure, 2 usage or input error.
"""

import argparse
import sys

from . import io
from .boundary import midsection, relative_report, transition
from .cobordism import Glue, compose_cobordisms, dual_cobordism
from .complex import boundary_components, classify
from .duality import dual_complex
from .errors import CellcxError, ParseError, SchemaVersionUnsupported, UnknownGenerator, BadParams
from .generators import generate
from . import kernels
from .labels import show
from .morphisms import (
    barycentric_subdivision,
    check_collapse,
    check_homomorphism,
    check_reduction,
    find_isomorphism,
    is_isomorphism,
)
from .slices import check_slice, sequence_to_slice, slice_to_sequence

USAGE_ERRORS = (ParseError, SchemaVersionUnsupported, UnknownGenerator, BadParams)


class Failure(Exception):
    """Validation failure carrying report lines."""

    def __init__(self, lines):
        super().__init__("validation failed")
        self.lines = lines


def fmt(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (tuple, list)) and all(isinstance(x, int) for x in v):
        return " ".join(map(str, v))
    if isinstance(v, (frozenset, tuple, list, set)):
        return show(v)
    return str(v)


def report(pairs, out):
    for k, v in pairs:
        print(f"{k}: {fmt(v)}", file=out)


def emit(text, path, out):
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        out.write(text)


def _component(K, args):
    comps = boundary_components(K)
    if not comps:
        raise Failure([("error", "complex has empty boundary")])
    if not 0 <= args.component < len(comps):
        raise ParseError(f"--component must be in 0..{len(comps) - 1}")
    return comps[args.component]


# -- subcommands ------------------------------------------------------------

def cmd_validate(args, out):
    K, _ = io.load_complex(args.file)
    rep = classify(K)
    report([("valid", True), ("f_vector", K.f_vector()), ("rank", K.max_rank),
            ("in_B", rep.in_B), ("in_C", rep.in_C)], out)


def cmd_classify(args, out):
    K, _ = io.load_complex(args.file)
    rep = classify(K)
    pairs = [("f_vector", K.f_vector()), ("euler_characteristic", K.euler_characteristic())]
    pairs += list(rep.flags().items())
    pairs.append(("boundary_components", len(rep.boundary_components)))
    if rep.pinch_cells:
        pairs.append(("pinch_cells", rep.pinch_cells))
    for k, w in sorted(rep.witnesses.items()):
        pairs.append((f"witness.{k}", w))
    report(pairs, out)


def cmd_dual(args, out):
    K, _ = io.load_complex(args.file)
    D, _ = dual_complex(K)
    emit(io.dumps_complex(D), args.output, out)


def cmd_bdiv(args, out):
    K, _ = io.load_complex(args.file)
    B, rho = barycentric_subdivision(K)
    emit(io.dumps_complex(B), args.output, out)
    if args.map:
        with open(args.map, "w") as fh:
            fh.write(io.dumps_map(rho))


def cmd_midsection(args, out):
    K, _ = io.load_complex(args.file)
    M, _ = midsection(K, _component(K, args))
    emit(io.dumps_complex(M), args.output, out)


def cmd_transition(args, out):
    K, _ = io.load_complex(args.file)
    J = _component(K, args)
    rel = relative_report(K, J)
    flags = [(k, getattr(rel, k)) for k in ("non_degenerate", "pure_relative", "uniformity_U",
                                            "transition_in_B", "uniform", "local_relative",
                                            "exactly_collared")]
    if not rel.uniform:
        raise Failure(flags + [(f"witness.{k}", w) for k, w in sorted(rel.witnesses.items())])
    T = transition(K, J).complex
    if args.output:
        emit(io.dumps_complex(T), args.output, out)
    report(flags + [("transition_f_vector", T.f_vector())], out)


def cmd_check_map(args, out):
    phi = io.load_map(args.file)
    kind = args.kind or phi.kind
    if kind in ("unchecked", "homomorphism"):
        try:
            check_homomorphism(phi)
        except CellcxError as exc:
            raise Failure([("kind", "homomorphism"), ("passed", False), ("error", exc.name),
                           ("witness", exc.witness)]) from None
        return report([("kind", "homomorphism"), ("passed", True)], out)
    if kind == "isomorphism":
        ok = is_isomorphism(phi)
        pairs = [("kind", kind), ("passed", ok)]
        if not ok:
            raise Failure(pairs)
        return report(pairs, out)
    rep = check_reduction(phi) if kind == "reduction" else check_collapse(phi)
    pairs = [("kind", kind)] + [(c, ok) for c, (ok, _) in rep.conditions.items()]
    pairs.append(("passed", rep.passed))
    if not rep.passed:
        raise Failure(pairs + [(f"witness.{c}", w) for c, w in rep.failures().items()])
    report(pairs, out)


def cmd_slice_to_seq(args, out):
    K, _ = io.load_complex(args.file)
    seq = slice_to_sequence(check_slice(K))
    emit(io.dumps_sequence(seq), args.output, out)


def _verify_claims(seq):
    for name, phi, check in (("rho_J", seq.rho_J, check_reduction), ("pi_J", seq.pi_J, check_collapse),
                             ("pi_L", seq.pi_L, check_collapse), ("rho_L", seq.rho_L, check_reduction)):
        rep = check(phi)
        if not rep.passed:
            raise Failure([("map", name), ("passed", False)] + [(f"witness.{c}", w) for c, w in rep.failures().items()])


def cmd_seq_to_slice(args, out):
    seq = io.loads_sequence(io.read_text(args.file))
    _verify_claims(seq)
    S = sequence_to_slice(seq)
    J, L = S.components
    emit(io.dumps_complex(S.complex, {"J": J.vertex_set(), "L": L.vertex_set()}), args.output, out)


def cmd_dual_cob(args, out):
    c = io.loads_cobordism(io.read_text(args.file))
    emit(io.dumps_cobordism(dual_cobordism(c)), args.output, out)


def cmd_compose(args, out):
    a = io.loads_cobordism(io.read_text(args.first))
    b = io.loads_cobordism(io.read_text(args.second))
    c = compose_cobordisms(a, b, Glue(a_out=args.a_out, b_in=args.b_in))
    emit(io.dumps_cobordism(c), args.output, out)


def cmd_gen(args, out):
    K = generate(args.name, args.params)
    emit(io.dumps_complex(K), args.output, out)


def cmd_export_dot(args, out):
    K, _ = io.load_complex(args.file)
    lines = ["digraph hasse {", "  rankdir=BT;", "  node [shape=box, fontsize=10];"]
    for i, c in enumerate(K.cells):
        label = show(c).replace('"', '\\"')
        lines.append(f'  c{i} [label="{label}"];')
    for r in range(K.max_rank + 1):
        ids = " ".join(f"c{i};" for i, rr in enumerate(K.ranks) if rr == r)
        lines.append(f"  {{ rank=same; {ids} }}")
    for i in range(len(K.cells)):
        for j in K.coface_ids(i):
            lines.append(f"  c{i} -> c{j};")
    lines.append("}")
    emit("\n".join(lines) + "\n", args.output, out)


def cmd_find_iso(args, out):
    A, _ = io.load_complex(args.first)
    B, _ = io.load_complex(args.second)
    table = find_isomorphism(A, B)
    pairs = [("isomorphic", table is not None)]
    if table is None:
        raise Failure(pairs)
    if args.show:
        pairs += [(show(x), show(y)) for x, y in table.items() if len(x) == 1]
    report(pairs, out)


def build_parser():
    p = argparse.ArgumentParser(prog="cellcx", description="Combinatorial cell complexes and cobordisms.")
    p.add_argument("--backend", action="store_true", help="print the active kernel backend and exit")
    sub = p.add_subparsers(dest="command")

    def add(name, fn, help, *, file=True, output=True):
        s = sub.add_parser(name, help=help)
        if file:
            s.add_argument("file")
        if output:
            s.add_argument("-o", "--output", help="write the result here instead of stdout")
        s.set_defaults(fn=fn)
        return s

    add("validate", cmd_validate, "check the axioms and report membership in B and C", output=False)
    add("classify", cmd_classify, "report every structural flag with witnesses", output=False)
    add("dual", cmd_dual, "dual of a closed complex in C")
    s = add("bdiv", cmd_bdiv, "barycentric subdivision")
    s.add_argument("--map", help="also write the last-element map document here")
    for name, fn, help in (("midsection", cmd_midsection, "midsection over a boundary component"),
                           ("transition", cmd_transition, "uniformity report and transition complex")):
        s = add(name, fn, help)
        s.add_argument("--component", type=int, default=0, help="boundary component index (default 0)")
    s = add("check-map", cmd_check_map, "verify a map document", output=False)
    s.add_argument("--kind", choices=["homomorphism", "reduction", "collapse", "isomorphism"])
    add("slice-to-seq", cmd_slice_to_seq, "canonical slice sequence of a slice")
    add("seq-to-slice", cmd_seq_to_slice, "slice built from a slice-sequence document")
    add("dual-cob", cmd_dual_cob, "dual of a cobordism (complex document with an 'ingoing' mark)")
    s = add("compose", cmd_compose, "glue two cobordisms", file=False)
    s.add_argument("first")
    s.add_argument("second")
    s.add_argument("--a-out", type=int, default=0, help="outgoing component of the first")
    s.add_argument("--b-in", type=int, default=0, help="ingoing component of the second")
    s = add("gen", cmd_gen, "generate a canonical instance", file=False)
    s.add_argument("name")
    s.add_argument("params", nargs="*")
    add("export-dot", cmd_export_dot, "Hasse diagram in Graphviz DOT")
    s = add("find-iso", cmd_find_iso, "search for a cell isomorphism", file=False, output=False)
    s.add_argument("first")
    s.add_argument("second")
    s.add_argument("--show", action="store_true", help="list the vertex correspondence")
    return p


def main(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code
    if args.backend:
        print(f"backend: {kernels.BACKEND}", file=out)
        return 0
    if not args.command:
        parser.print_usage(err)
        return 2
    try:
        args.fn(args, out)
    except Failure as exc:
        report(exc.lines, out)
        return 1
    except USAGE_ERRORS as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=err)
        return 2
    except CellcxError as exc:
        report([("valid", False), ("error", type(exc).__name__), ("message", str(exc)),
                ("witness", exc.witness)], out)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=err)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
