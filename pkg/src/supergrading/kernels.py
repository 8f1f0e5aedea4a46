"""Hot loops for exhaustive identity checks on structure-constant tables.

Structure constants are encoded as integer coefficient vectors over a common
cyclotomic power basis, then handed to either the compiled extension
(``_kernels``) or the pure-Python fallback (``_kernels_py``).  The compiled
module is used when it imports and the encoded data provably fits in int64;
set ``SUPERGRADING_PURE_PYTHON=1`` to force the fallback.
"""

from __future__ import annotations

import os
from array import array
from dataclasses import dataclass
from math import gcd

from . import _kernels_py
from .cyclo import _phi, _power_table

try:  # pragma: no cover - depends on the build
    from . import _kernels as _compiled
except ImportError:  # pragma: no cover
    _compiled = None

__all__ = ["Encoded", "encode", "backend_name", "find_assoc_failure", "find_jacobi_failure", "has_compiled"]

_INT64_SAFE = 1 << 62


def has_compiled() -> bool:
    return _compiled is not None


def _use_compiled() -> bool:
    return _compiled is not None and os.environ.get("SUPERGRADING_PURE_PYTHON", "") in ("", "0")


def backend_name() -> str:
    return "compiled" if _use_compiled() else "python"


@dataclass
class Encoded:
    n: int
    phi: int
    red: array
    indptr: array
    idx: array
    coef: array
    fits_int64: bool


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def encode(struct: dict, n: int) -> Encoded:
    """Integer encoding of ``{(i, j): {k: Cyclo}}`` over a common conductor."""
    N = 1
    for row in struct.values():
        for c in row.values():
            N = _lcm(N, c.n)
    phi = _phi(N)
    denom = 1
    lifted = {}
    for key, row in struct.items():
        out = {}
        for k, c in row.items():
            v = c.lift(N).c
            for q in v:
                denom = _lcm(denom, int(q.denominator))
            out[k] = v
        lifted[key] = out
    indptr = array("q", [0])
    idx = array("q")
    coef = array("q")
    big = 0
    for i in range(n):
        for j in range(n):
            row = lifted.get((i, j), {})
            for k in sorted(row):
                idx.append(k)
                for q in row[k]:
                    v = int(q * denom)
                    big = max(big, abs(v))
                    coef.append(v)
            indptr.append(len(idx))
    table = _power_table(N)
    red = array("q")
    rmax = 0
    for e in range(phi, 2 * phi - 1):
        for v in table[e]:
            red.append(v)
            rmax = max(rmax, abs(v))
    per_pair = max((indptr[p + 1] - indptr[p] for p in range(n * n)), default=0)
    bound = 3 * max(per_pair, 1) * n * phi * big * big * (1 + (phi - 1) * rmax)
    fits = bound < _INT64_SAFE and rmax < _INT64_SAFE
    return Encoded(n, phi, red, indptr, idx, coef, fits)


def find_assoc_failure(enc: Encoded, force_python: bool = False):
    """First basis triple violating associativity, or None."""
    mod = _compiled if (_use_compiled() and enc.fits_int64 and not force_python) else _kernels_py
    res = mod.find_assoc_failure(enc.n, enc.phi, enc.red, enc.indptr, enc.idx, enc.coef)
    return None if res[0] < 0 else tuple(res)


def find_jacobi_failure(enc: Encoded, parity, force_python: bool = False):
    """First basis triple violating the super Jacobi identity, or None."""
    par = array("q", [int(p) for p in parity])
    mod = _compiled if (_use_compiled() and enc.fits_int64 and not force_python) else _kernels_py
    res = mod.find_jacobi_failure(enc.n, enc.phi, enc.red, enc.indptr, enc.idx, enc.coef, par)
    return None if res[0] < 0 else tuple(res)
