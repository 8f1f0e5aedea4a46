"""Graded matrix superalgebras M_k(D), elementary gradings and simplicity tests."""

from __future__ import annotations

from typing import Iterable

from .abelian import (
    Bicharacter,
    Coset,
    FinAbGroup,
    FiniteSubgroup,
    GroupElement,
    GSharpElement,
)
from .cyclo import ONE, ZERO
from .division import (
    DivisionError,
    GradedDivisionAlgebra,
    build_standard_M,
    build_standard_Q,
    sharp_bicharacter,
    to_sharp,
    twisted_group_algebra,
)
from .linalg import nullspace
from .superalgebra import GradedAlgebra

__all__ = [
    "KappaMap",
    "MatrixModel",
    "elementary_grading",
    "kronecker_graded",
    "build_M_even",
    "build_M_odd",
    "build_Q",
    "component_dim",
    "is_graded_simple",
    "is_simple_superalgebra",
    "jacobson_radical",
    "trivial_division",
]


class KappaMap:
    """Finite multiset of cosets of a finite subgroup H of G."""

    def __init__(self, H: FiniteSubgroup, entries: Iterable = ()):
        if not isinstance(H.parent, FinAbGroup):
            raise ValueError("kappa lives on cosets of a subgroup of G")
        self.H = H
        counts: dict = {}
        for rep, mult in entries:
            c = rep if isinstance(rep, Coset) else Coset(rep, H)
            if c.subgroup != H:
                c = Coset(c.rep, H)
            mult = int(mult)
            if mult < 0:
                raise ValueError("multiplicities must be non-negative")
            if mult:
                counts[c] = counts.get(c, 0) + mult
        self.counts = counts

    @property
    def group(self) -> FinAbGroup:
        return self.H.parent

    def items(self) -> list[tuple[Coset, int]]:
        return sorted(self.counts.items(), key=lambda cm: cm[0].key())

    def __call__(self, x) -> int:
        c = x if isinstance(x, Coset) else Coset(x, self.H)
        return self.counts.get(c, 0)

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def __len__(self):
        return self.total

    def is_empty(self) -> bool:
        return not self.counts

    def support(self) -> list[Coset]:
        return [c for c, _ in self.items()]

    def shift(self, g: GroupElement) -> "KappaMap":
        """(g . kappa)(x) = kappa(g^{-1} x)."""
        return KappaMap(self.H, [(c.rep + g, m) for c, m in self.counts.items()])

    def star(self) -> "KappaMap":
        """kappa*(x) = kappa(x^{-1})."""
        return KappaMap(self.H, [(-c.rep, m) for c, m in self.counts.items()])

    def realize(self) -> list[GroupElement]:
        """Canonical tuple realizing kappa: canonical reps in coset order, repeated."""
        out = []
        for c, m in self.items():
            out.extend([c.rep] * m)
        return out

    def key(self) -> tuple:
        return tuple((c.rep.key(), m) for c, m in self.items())

    def __eq__(self, other):
        return isinstance(other, KappaMap) and self.H == other.H and self.counts == other.counts

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return "KappaMap{" + ", ".join(f"{c.rep}: {m}" for c, m in self.items()) + "}"


def trivial_division(G: FinAbGroup) -> GradedDivisionAlgebra:
    """The field F as a graded-division algebra with support {e}."""
    T = FiniteSubgroup(G.sharp, [])
    return twisted_group_algebra(T, Bicharacter.trivial(T), [])


class MatrixModel:
    """M_k(D) with row degrees gamma; basis E_ij (x) X_t ordered by (i, j, t)."""

    def __init__(self, D: GradedDivisionAlgebra, gamma: list[GSharpElement], meta: dict | None = None):
        G = D.group
        for g in gamma:
            if not isinstance(g, GSharpElement) or g.g.group != G:
                raise ValueError("row degrees must be elements of G#")
        if D.is_odd and any(g.parity for g in gamma):
            raise ValueError("over odd D the module basis must be even")
        self.D = D
        self.gamma = list(gamma)
        self.k = len(gamma)
        self.tels = list(D.T.elements)
        self.tpos = {t: i for i, t in enumerate(self.tels)}
        self.nt = len(self.tels)
        self.algebra = self._build(meta or {})
        self.algebra.model = self

    def index(self, i: int, j: int, t) -> int:
        return (i * self.k + j) * self.nt + self.tpos[t]

    def unpack(self, idx: int) -> tuple[int, int, GSharpElement]:
        ij, tp = divmod(idx, self.nt)
        i, j = divmod(ij, self.k)
        return i, j, self.tels[tp]

    def degree(self, i: int, j: int, t) -> GSharpElement:
        return self.gamma[i] + t - self.gamma[j]

    def row_parity(self, i: int) -> int:
        return self.gamma[i].parity

    def _label(self, i, j, t) -> str:
        base = f"E{i + 1},{j + 1}"
        if self.nt == 1:
            return base
        return f"{base}*X{t}"

    def _build(self, meta) -> GradedAlgebra:
        k = self.k
        labels, degrees = [], []
        for i in range(k):
            for j in range(k):
                for t in self.tels:
                    labels.append(self._label(i, j, t))
                    degrees.append(self.degree(i, j, t))
        sigma = self.D.sigma
        struct = {}
        for i in range(k):
            for j in range(k):
                for t in self.tels:
                    a = self.index(i, j, t)
                    for l in range(k):
                        for s in self.tels:
                            b = self.index(j, l, s)
                            struct[(a, b)] = {self.index(i, l, t + s): sigma[(t, s)]}
        e = self.D.T.identity
        unit = {self.index(i, i, e): ONE for i in range(k)}
        meta = dict(meta)
        meta.setdefault("k", k)
        return GradedAlgebra(self.D.group, labels, degrees, struct, unit, "assoc", meta)

    # matrices over D are dicts {(i, j): {t: Cyclo}}
    def to_vector(self, X: dict) -> dict:
        out = {}
        for (i, j), entry in X.items():
            for t, c in entry.items():
                if c:
                    out[self.index(i, j, t)] = c
        return out

    def from_vector(self, v: dict) -> dict:
        X: dict = {}
        for idx, c in v.items():
            i, j, t = self.unpack(idx)
            X.setdefault((i, j), {})[t] = c
        return X


def elementary_grading(gamma: list, k: int | None = None, group: FinAbGroup | None = None) -> GradedAlgebra:
    """M_k(F) with deg E_ij = g_i g_j^{-1}; entries of gamma are G# elements (or G elements, even)."""
    if k is not None and len(gamma) != k:
        raise ValueError(f"gamma has {len(gamma)} entries, expected {k}")
    gam = [g if isinstance(g, GSharpElement) else GSharpElement(g, 0) for g in gamma]
    if group is None:
        if not gam:
            raise ValueError("empty gamma needs an explicit group")
        group = gam[0].g.group
    return MatrixModel(trivial_division(group), gam, {"family": "elementary"}).algebra


def kronecker_graded(gamma: list, D: GradedDivisionAlgebra, meta: dict | None = None) -> GradedAlgebra:
    """M_k(D) = M_k(F) (x) D with deg(E_ij (x) X_t) = g_i deg(X_t) g_j^{-1}."""
    gam = [g if isinstance(g, GSharpElement) else GSharpElement(g, 0) for g in gamma]
    return MatrixModel(D, gam, meta).algebra


def _division_for_even(T: FiniteSubgroup, beta: Bicharacter) -> GradedDivisionAlgebra:
    if T.order == 1:
        return trivial_division(T.parent if isinstance(T.parent, FinAbGroup) else T.parent.base)
    return build_standard_M(T, beta)


def build_M_even(T: FiniteSubgroup, beta: Bicharacter, kappa0: KappaMap, kappa1: KappaMap) -> GradedAlgebra:
    """Even grading on M(m, n): elementary grading on M(k0, k1) tensored with the standard realization."""
    if kappa0.is_empty() and kappa1.is_empty():
        raise ValueError("kappa0 and kappa1 cannot both be empty")
    if kappa0.H != T or kappa1.H != T:
        raise ValueError("kappa maps must live on G/T")
    D = _division_for_even(T, beta)
    gamma = [GSharpElement(g, 0) for g in kappa0.realize()] + [GSharpElement(g, 1) for g in kappa1.realize()]
    return MatrixModel(D, gamma, {"family": "m-even", "k0": kappa0.total, "k1": kappa1.total}).algebra


def build_M_odd(T: FiniteSubgroup, beta_tilde: Bicharacter, kappa: KappaMap) -> GradedAlgebra:
    """Odd grading on M(n, n) from an odd standard realization and kappa on G/T+."""
    Ts = to_sharp(T)
    if Ts.is_even():
        raise DivisionError("odd grading needs odd elements in T")
    from .abelian import ParityMap

    beta = sharp_bicharacter(beta_tilde, Ts).twisted(ParityMap(Ts))
    D = build_standard_M(Ts, beta)
    Tplus = Ts.even_part().project_to_base()
    if kappa.H != Tplus:
        raise ValueError("kappa must live on G/T+")
    if kappa.is_empty():
        raise ValueError("kappa cannot be empty")
    gamma = [GSharpElement(g, 0) for g in kappa.realize()]
    return MatrixModel(D, gamma, {"family": "m-odd"}).algebra


def build_Q(Tplus: FiniteSubgroup, beta_plus: Bicharacter, h: GroupElement, kappa: KappaMap) -> GradedAlgebra:
    """Grading on Q(n): M(T+, beta+, kappa) + u M(T+, beta+, kappa), deg u = (h, 1)."""
    if kappa.H != Tplus:
        raise ValueError("kappa must live on G/T+")
    if kappa.is_empty():
        raise ValueError("kappa cannot be empty")
    D = build_standard_Q(Tplus, beta_plus, h)
    gamma = [GSharpElement(g, 0) for g in kappa.realize()]
    return MatrixModel(D, gamma, {"family": "q"}).algebra


def component_dim(A: GradedAlgebra, g: GSharpElement) -> int:
    return A.component_dim(g)


def jacobson_radical(A: GradedAlgebra) -> list[dict]:
    """Basis of {a : tr(L_{ab}) = 0 for all b} (the radical in characteristic zero)."""
    n = A.dim
    traces = [A.left_matrix_trace(m) for m in range(n)]
    rows = []
    for j in range(n):
        row = {}
        for i in range(n):
            acc = ZERO
            for m, c in A.struct.get((i, j), {}).items():
                if traces[m]:
                    acc = acc + c * traces[m]
            if acc:
                row[i] = acc
        if row:
            rows.append(row)
    return nullspace(rows, n)


def _central_dimension(A: GradedAlgebra, indices: list[int]) -> int:
    rows = A.commutant_rows(indices, super_sign=False)
    return len(nullspace(rows, len(indices)))


def is_graded_simple(A: GradedAlgebra) -> bool:
    """Exact graded-simplicity test for a finite-dimensional unital associative algebra.

    A graded ideal of a semisimple algebra is generated by a central idempotent
    of degree (e, 0), so A is graded-simple iff its radical vanishes and the
    identity-degree part of its center is one-dimensional.
    """
    if A.dim == 0 or A.unit is None:
        return False
    if jacobson_radical(A):
        return False
    e = GSharpElement(A.group.identity, 0)
    return _central_dimension(A, A.component(e)) == 1


def is_simple_superalgebra(A: GradedAlgebra) -> bool:
    """Simplicity as a superalgebra: same test with only the parity grading kept."""
    if A.dim == 0 or A.unit is None:
        return False
    if jacobson_radical(A):
        return False
    evens = [i for i in range(A.dim) if A.parity(i) == 0]
    return _central_dimension(A, evens) == 1
