"""Sparse exact linear algebra over cyclotomic scalars.

Vectors are dicts ``{index: Cyclo}`` with no zero entries; matrices are
lists of such row vectors.  Everything is plain Gaussian elimination, which is
all the desk-scale problems here need.
"""

from __future__ import annotations

from typing import Iterable

from .cyclo import ONE, ZERO, as_cyclo

__all__ = [
    "Vec",
    "vec_add",
    "vec_scale",
    "vec_axpy",
    "clean",
    "EchelonBasis",
    "rank",
    "nullspace",
    "solve",
    "inverse",
    "mat_mul",
    "identity",
    "LinAlgError",
]

Vec = dict


class LinAlgError(ValueError):
    pass


def clean(v: dict) -> dict:
    return {k: c for k, c in v.items() if c}


def vec_scale(v: dict, a) -> dict:
    if not a:
        return {}
    return {k: c * a for k, c in v.items()}


def vec_axpy(y: dict, a, x: dict) -> None:
    """y += a*x in place."""
    if not a:
        return
    for k, c in x.items():
        s = y.get(k)
        s = c * a if s is None else s + c * a
        if s:
            y[k] = s
        else:
            y.pop(k, None)


def vec_add(x: dict, y: dict) -> dict:
    out = dict(x)
    vec_axpy(out, ONE, y)
    return out


class EchelonBasis:
    """Incrementally maintained reduced echelon basis of a subspace.

    Each stored vector has a pivot coordinate equal to 1 that is zero in every
    other stored vector.
    """

    def __init__(self):
        self.rows: list[dict] = []
        self.pivots: list[int] = []
        self._pivot_row: dict[int, int] = {}

    def __len__(self):
        return len(self.rows)

    def reduce(self, v: dict) -> dict:
        v = dict(v)
        for p, r in zip(self.pivots, self.rows):
            c = v.get(p)
            if c:
                vec_axpy(v, -c, r)
        return v

    def add(self, v: dict) -> dict | None:
        """Insert v; returns the normalized new row, or None if v was dependent."""
        w = self.reduce(v)
        if not w:
            return None
        p = min(w)
        w = vec_scale(w, w[p].inv())
        for i, r in enumerate(self.rows):
            c = r.get(p)
            if c:
                vec_axpy(r, -c, w)
        self._pivot_row[p] = len(self.rows)
        self.rows.append(w)
        self.pivots.append(p)
        return w

    def contains(self, v: dict) -> bool:
        return not self.reduce(v)

    def coordinates(self, v: dict) -> dict | None:
        """Coefficients of v on the stored rows, or None if v is outside the span."""
        if self.reduce(v):
            return None
        return clean({i: v.get(p, ZERO) for i, p in enumerate(self.pivots)})

    def sorted_rows(self) -> list[dict]:
        order = sorted(range(len(self.rows)), key=lambda i: self.pivots[i])
        return [self.rows[i] for i in order]


def rank(rows: Iterable[dict]) -> int:
    eb = EchelonBasis()
    for r in rows:
        eb.add(r)
    return len(eb)


def nullspace(rows: Iterable[dict], ncols: int) -> list[dict]:
    """Basis of {x : r.x = 0 for every row r}, one vector per free column."""
    eb = EchelonBasis()
    for r in rows:
        eb.add(r)
    pivset = set(eb.pivots)
    out = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = {f: ONE}
        for p, r in zip(eb.pivots, eb.rows):
            c = r.get(f)
            if c:
                v[p] = -c
        out.append(v)
    return out


def solve(rows: list[dict], rhs: list, ncols: int) -> dict | None:
    """One solution x of rows . x = rhs, or None if inconsistent."""
    aug = []
    for r, b in zip(rows, rhs):
        row = dict(r)
        b = as_cyclo(b)
        if b:
            row[ncols] = b
        aug.append(row)
    eb = EchelonBasis()
    for r in aug:
        eb.add(r)
    if ncols in eb.pivots:
        return None
    x = {}
    for p, r in zip(eb.pivots, eb.rows):
        c = r.get(ncols)
        if c:
            x[p] = c
    return x


def identity(n: int) -> list[dict]:
    return [{i: ONE} for i in range(n)]


def mat_mul(a: list[dict], b: list[dict]) -> list[dict]:
    out = []
    for row in a:
        acc: dict = {}
        for k, c in row.items():
            vec_axpy(acc, c, b[k])
        out.append(acc)
    return out


def inverse(m: list[dict]) -> list[dict]:
    """Inverse of a square matrix given as sparse rows."""
    n = len(m)
    eb = EchelonBasis()
    for i, r in enumerate(m):
        row = dict(r)
        row[n + i] = ONE
        if eb.add(row) is None:
            raise LinAlgError("matrix is singular")
    if any(p >= n for p in eb.pivots):
        raise LinAlgError("matrix is singular")
    inv = [None] * n
    for p, r in zip(eb.pivots, eb.rows):
        inv[p] = {k - n: c for k, c in r.items() if k >= n}
    return inv
