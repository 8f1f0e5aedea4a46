"""Finite-dimensional G#-graded algebras given by structure constants.

One table type serves both associative superalgebras and Lie superalgebras
(``kind`` is ``"assoc"`` or ``"lie"``).  The basis is homogeneous; products of
basis vectors are sparse vectors ``{k: Cyclo}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from . import kernels
from .abelian import FinAbGroup, GSharpElement
from .cyclo import ONE, ZERO, Cyclo, as_cyclo
from .linalg import EchelonBasis, clean, nullspace, vec_axpy

__all__ = ["GradedAlgebra", "CheckResult", "subalgebra", "quotient", "direct_product", "change_basis"]


@dataclass
class CheckResult:
    name: str
    ok: bool
    detail: str = ""

    def __bool__(self):
        return self.ok


class GradedAlgebra:
    """Structure-constant table with a homogeneous G#-graded basis."""

    def __init__(
        self,
        group: FinAbGroup,
        labels: list[str],
        degrees: list[GSharpElement],
        struct: dict,
        unit: dict | None = None,
        kind: str = "assoc",
        meta: dict | None = None,
    ):
        if len(labels) != len(degrees):
            raise ValueError("labels and degrees differ in length")
        if kind not in ("assoc", "lie"):
            raise ValueError(f"unknown algebra kind {kind!r}")
        for d in degrees:
            if d.g.group != group:
                raise ValueError("basis degree outside the grading group")
        self.group = group
        self.labels = list(labels)
        self.degrees = list(degrees)
        self.struct = {key: clean(row) for key, row in struct.items()}
        self.struct = {key: row for key, row in self.struct.items() if row}
        self.unit = clean(unit) if unit is not None else None
        self.kind = kind
        self.meta = dict(meta or {})

    # -- basic access --------------------------------------------------------

    @property
    def dim(self) -> int:
        return len(self.labels)

    def parity(self, i: int) -> int:
        return self.degrees[i].parity

    def basis_product(self, i: int, j: int) -> dict:
        return self.struct.get((i, j), {})

    def mul(self, u: dict, v: dict) -> dict:
        out: dict = {}
        for i, a in u.items():
            for j, b in v.items():
                row = self.struct.get((i, j))
                if row:
                    vec_axpy(out, a * b, row)
        return out

    def degree_of(self, v: dict) -> GSharpElement | None:
        """Degree of a nonzero homogeneous vector, None if inhomogeneous or zero."""
        degs = {self.degrees[i] for i in v}
        return degs.pop() if len(degs) == 1 else None

    def component(self, g: GSharpElement) -> list[int]:
        return [i for i, d in enumerate(self.degrees) if d == g]

    def component_dim(self, g: GSharpElement) -> int:
        return sum(1 for d in self.degrees if d == g)

    def support(self) -> list[GSharpElement]:
        return sorted(set(self.degrees), key=lambda d: d.key())

    def fingerprint(self) -> tuple:
        """Sorted (degree, dimension) pairs; invariant under relabeling the basis."""
        counts: dict = {}
        for d in self.degrees:
            counts[d.key()] = counts.get(d.key(), 0) + 1
        return tuple(sorted(counts.items()))

    def even_odd_dims(self) -> tuple[int, int]:
        odd = sum(d.parity for d in self.degrees)
        return self.dim - odd, odd

    # -- axiom checks --------------------------------------------------------

    def check_grading(self) -> CheckResult:
        for (i, j), row in self.struct.items():
            target = self.degrees[i] + self.degrees[j]
            for k in row:
                if self.degrees[k] != target:
                    return CheckResult(
                        "grading", False, f"{self.labels[i]} * {self.labels[j]} has a component on {self.labels[k]}"
                    )
        return CheckResult("grading", True)

    def encoded(self) -> kernels.Encoded:
        enc = getattr(self, "_enc", None)
        if enc is None:
            enc = kernels.encode(self.struct, self.dim)
            self._enc = enc
        return enc

    def check_associativity(self, force_python: bool = False) -> CheckResult:
        bad = kernels.find_assoc_failure(self.encoded(), force_python=force_python)
        if bad is None:
            return CheckResult("associativity", True)
        i, j, k = bad
        return CheckResult("associativity", False, f"({self.labels[i]}, {self.labels[j]}, {self.labels[k]})")

    def check_unit(self) -> CheckResult:
        if self.unit is None:
            return CheckResult("unit", False, "no unit recorded")
        for i in range(self.dim):
            e = {i: ONE}
            if self.mul(self.unit, e) != e or self.mul(e, self.unit) != e:
                return CheckResult("unit", False, f"fails on {self.labels[i]}")
        return CheckResult("unit", True)

    def check_super_anticommutativity(self) -> CheckResult:
        for i in range(self.dim):
            for j in range(i, self.dim):
                a = self.basis_product(i, j)
                b = self.basis_product(j, i)
                sign = -1 if self.parity(i) and self.parity(j) else 1
                # [a,b] = -(-1)^{|a||b|}[b,a]
                s = dict(a)
                vec_axpy(s, as_cyclo(sign), b)
                if s:
                    return CheckResult(
                        "anticommutativity", False, f"({self.labels[i]}, {self.labels[j]})"
                    )
        return CheckResult("anticommutativity", True)

    def check_jacobi(self, force_python: bool = False) -> CheckResult:
        parity = [d.parity for d in self.degrees]
        bad = kernels.find_jacobi_failure(self.encoded(), parity, force_python=force_python)
        if bad is None:
            return CheckResult("jacobi", True)
        a, b, c = bad
        return CheckResult("jacobi", False, f"({self.labels[a]}, {self.labels[b]}, {self.labels[c]})")

    # -- derived structures --------------------------------------------------

    def left_matrix_trace(self, i: int) -> Cyclo:
        """Trace of left multiplication by basis vector i."""
        tr = ZERO
        for k in range(self.dim):
            c = self.struct.get((i, k), {}).get(k)
            if c:
                tr = tr + c
        return tr

    def commutant_rows(self, indices: Iterable[int], super_sign: bool, parity: int | None = None) -> list[dict]:
        """Linear conditions for z (supported on ``indices``) to (super)commute with the basis."""
        indices = list(indices)
        col = {idx: c for c, idx in enumerate(indices)}
        rows = []
        for b in range(self.dim):
            sign = -1 if (super_sign and parity and self.parity(b)) else 1
            eqs: dict = {}
            for idx in indices:
                # z b - sign * b z, coefficient of e_k, unknown column col[idx]
                for k, c in self.struct.get((idx, b), {}).items():
                    eqs.setdefault(k, {})
                    vec_axpy(eqs[k], ONE, {col[idx]: c})
                for k, c in self.struct.get((b, idx), {}).items():
                    eqs.setdefault(k, {})
                    vec_axpy(eqs[k], as_cyclo(-sign), {col[idx]: c})
            rows.extend(r for r in eqs.values() if r)
        return rows

    def center(self, super_sign: bool = False) -> list[dict]:
        """Homogeneous basis of the center (or supercenter if ``super_sign``)."""
        out = []
        for g in self.support():
            idxs = self.component(g)
            rows = self.commutant_rows(idxs, super_sign, g.parity)
            for v in nullspace(rows, len(idxs)):
                out.append({idxs[c]: a for c, a in v.items()})
        return out

    def __repr__(self):
        return f"GradedAlgebra({self.kind}, dim={self.dim}, group={self.group})"


def subalgebra(alg: GradedAlgebra, vectors: Iterable[dict], check_closed: bool = True, meta=None) -> GradedAlgebra:
    """Algebra on the span of homogeneous ``vectors``, basis = reduced echelon rows."""
    eb = EchelonBasis()
    for v in vectors:
        if v and alg.degree_of(v) is None:
            raise ValueError("subalgebra generators must be homogeneous")
        eb.add(v)
    order = sorted(range(len(eb.rows)), key=lambda i: eb.pivots[i])
    rows = [eb.rows[i] for i in order]
    pivots = [eb.pivots[i] for i in order]
    pos = {p: n for n, p in enumerate(pivots)}
    struct = {}
    for a, ra in enumerate(rows):
        for b, rb in enumerate(rows):
            prod = alg.mul(ra, rb)
            if not prod:
                continue
            rest = eb.reduce(prod)
            if rest:
                if check_closed:
                    raise ValueError("span is not closed under the product")
            coords = {pos[p]: prod[p] for p in pivots if p in prod}
            if coords:
                struct[(a, b)] = coords
    labels = [alg.labels[p] for p in pivots]
    degrees = [alg.degrees[p] for p in pivots]
    unit = None
    if alg.unit is not None and eb.contains(alg.unit):
        unit = {pos[p]: alg.unit[p] for p in pivots if p in alg.unit}
    sub = GradedAlgebra(alg.group, labels, degrees, struct, unit, alg.kind, meta if meta is not None else dict(alg.meta))
    sub.embedding = rows
    return sub


def quotient(alg: GradedAlgebra, ideal: Iterable[dict], meta=None) -> GradedAlgebra:
    """alg / span(ideal); the ideal must be spanned by homogeneous vectors."""
    eb = EchelonBasis()
    for v in ideal:
        eb.add(v)
    piv = set(eb.pivots)
    keep = [i for i in range(alg.dim) if i not in piv]
    pos = {i: n for n, i in enumerate(keep)}
    struct = {}
    for a in keep:
        for b in keep:
            prod = alg.basis_product(a, b)
            if not prod:
                continue
            red = eb.reduce(prod)
            coords = {pos[k]: c for k, c in red.items()}
            if coords:
                struct[(pos[a], pos[b])] = coords
    unit = None
    if alg.unit is not None:
        red = eb.reduce(alg.unit)
        unit = {pos[k]: c for k, c in red.items()}
    q = GradedAlgebra(
        alg.group, [alg.labels[i] for i in keep], [alg.degrees[i] for i in keep], struct, unit, alg.kind,
        meta if meta is not None else dict(alg.meta),
    )
    q.kept = keep
    return q


def direct_product(a: GradedAlgebra, b: GradedAlgebra, tags=("L", "R"), meta=None) -> GradedAlgebra:
    """a x b with basis (a-basis, then b-basis)."""
    if a.group != b.group or a.kind != b.kind:
        raise ValueError("factors must share group and kind")
    n = a.dim
    struct = dict(a.struct)
    for (i, j), row in b.struct.items():
        struct[(n + i, n + j)] = {n + k: c for k, c in row.items()}
    unit = None
    if a.unit is not None and b.unit is not None:
        unit = dict(a.unit)
        unit.update({n + k: c for k, c in b.unit.items()})
    labels = [f"{tags[0]}:{x}" for x in a.labels] + [f"{tags[1]}:{x}" for x in b.labels]
    return GradedAlgebra(a.group, labels, a.degrees + b.degrees, struct, unit, a.kind, meta or {})


def change_basis(alg: GradedAlgebra, vectors: list[dict], degrees: list[GSharpElement], labels: list[str],
                 meta=None) -> GradedAlgebra:
    """Rewrite ``alg`` in a new basis with prescribed degrees.

    The vectors must be linearly independent and span ``alg``; the returned
    table is checked against the prescribed grading by the caller (check_grading).
    """
    n = alg.dim
    if len(vectors) != n or len(degrees) != n or len(labels) != n:
        raise ValueError("a new basis needs exactly dim(alg) vectors, degrees and labels")
    # column j of the change-of-basis matrix is vectors[j]; express products in it
    rows = [dict() for _ in range(n)]
    for j, v in enumerate(vectors):
        for i, c in v.items():
            rows[i][j] = c
    eb = EchelonBasis()
    for r in rows:
        eb.add(r)
    if len(eb) != n:
        raise ValueError("vectors do not form a basis")
    from .linalg import solve

    def coords(w: dict) -> dict:
        x = solve(rows, [w.get(i, ZERO) for i in range(n)], n)
        if x is None:
            raise ValueError("vector outside the span")
        return x

    struct = {}
    for a, va in enumerate(vectors):
        for b, vb in enumerate(vectors):
            prod = alg.mul(va, vb)
            if prod:
                struct[(a, b)] = coords(prod)
    unit = coords(alg.unit) if alg.unit is not None else None
    return GradedAlgebra(alg.group, labels, degrees, struct, unit, alg.kind, meta if meta is not None else dict(alg.meta))
