"""Time the incidence and axiom kernels on both backends.

    python3 benchmarks/bench_kernels.py [--repeat N] [--quick]

Inputs are torus grids and their barycentric subdivisions. Every kernel runs
on the same masks and ranks under each backend, and the results are checked
to agree before anything is timed.
"""

import argparse
import timeit

from cellcx import kernels
from cellcx.generators import torus_grid
from cellcx.morphisms import barycentric_subdivision


def instances(quick):
    sizes = [(4, 5), (8, 8)] if quick else [(4, 5), (8, 8), (16, 16), (24, 24)]
    out = []
    for a, b in sizes:
        T = torus_grid(a, b)
        out.append((f"torus{a}x{b}", T))
        if a * b <= 64:
            out.append((f"bdiv(torus{a}x{b})", barycentric_subdivision(T)[0]))
    return out


def calls(backend, K):
    masks, ranks = K.masks, list(K.ranks)
    below = backend.strict_below(masks)
    return {
        "strict_below": lambda: backend.strict_below(masks),
        "transpose": lambda: backend.transpose(below),
        "rank_violation": lambda: backend.rank_violation(below, ranks),
        "gap_violation": lambda: backend.gap_violation(below, ranks),
        "intersection_violation": lambda: backend.intersection_violation(masks, below),
        "diamond_violation": lambda: backend.diamond_violation(below, ranks),
    }


def best_of(fn, repeat):
    number, _ = timeit.Timer(fn).autorange()
    return min(timeit.repeat(fn, number=number, repeat=repeat)) / number


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--quick", action="store_true", help="small inputs only")
    args = ap.parse_args(argv)

    py, cy = kernels.python_backend, kernels.compiled_backend
    if cy is None:
        print("compiled backend not built; only the python timings are shown")
    header = f"{'instance':<20} {'cells':>6} {'kernel':<24} {'python ms':>10}"
    if cy is not None:
        header += f" {'cython ms':>10} {'speedup':>8}"
    print(header)
    for name, K in instances(args.quick):
        py_calls = calls(py, K)
        cy_calls = calls(cy, K) if cy is not None else {}
        for kernel, fn in py_calls.items():
            t_py = best_of(fn, args.repeat)
            row = f"{name:<20} {len(K.cells):>6} {kernel:<24} {t_py * 1e3:>10.3f}"
            if cy is not None:
                assert fn() == cy_calls[kernel](), (name, kernel)
                t_cy = best_of(cy_calls[kernel], args.repeat)
                row += f" {t_cy * 1e3:>10.3f} {t_py / t_cy:>7.1f}x"
            print(row)


if __name__ == "__main__":
    main()
