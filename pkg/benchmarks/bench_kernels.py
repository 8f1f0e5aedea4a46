"""Compare the compiled and pure-Python structure-constant kernels.

    python3 benchmarks/bench_kernels.py [--repeat N]

Each row times a full associativity or super Jacobi sweep over all basis
triples of one algebra with both backends (encoding excluded), and checks
that they return the same answer.
"""

import argparse
import sys
import time

from supergrading import kernels
from supergrading.abelian import parse_group
from supergrading.classify import enumerate_census
from supergrading.lie import lie_from_params


def cases():
    for fam, g, dim, shape in [
        ("m-even", "Z3xZ3", 9, None),
        ("m-star", "Z4", 16, None),
        ("q", "Z4", 18, None),
        ("m-even", "Z2", 36, (3, 3)),
        ("m-odd", "Z2xZ2", 36, None),
    ]:
        p = enumerate_census(fam, parse_group(g), dim, shape)[-1]
        built = p.build()
        A = getattr(built, "algebra", built)
        yield f"assoc  {fam} {g} dim {A.dim}", "assoc", A
    for fam, g, dim, shape in [
        ("m-star", "Z2", 36, None),
        ("q", "Z2", 50, None),
        ("m-even", "Z2", 64, (4, 4)),
    ]:
        L = lie_from_params(enumerate_census(fam, parse_group(g), dim, shape)[0])
        yield f"jacobi {L.meta['family']} dim {L.dim}", "jacobi", L


def run(kind, A, enc, force_python):
    if kind == "assoc":
        return kernels.find_assoc_failure(enc, force_python=force_python)
    return kernels.find_jacobi_failure(enc, [A.parity(i) for i in range(A.dim)], force_python=force_python)


def best_of(repeat, fn):
    best, out = float("inf"), None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    if not kernels.has_compiled():
        print("compiled kernels not available; build with pip install -e . --no-build-isolation")
        return 1
    print(f"{'case':32} {'compiled':>10} {'python':>10} {'speedup':>8}")
    for name, kind, A in cases():
        enc = kernels.encode(A.struct, A.dim)
        tc, rc = best_of(args.repeat, lambda: run(kind, A, enc, False))
        tp, rp = best_of(args.repeat, lambda: run(kind, A, enc, True))
        if rc != rp:
            print(f"{name}: backends disagree ({rc} vs {rp})")
            return 1
        print(f"{name:32} {tc:9.4f}s {tp:9.4f}s {tp / tc:7.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
