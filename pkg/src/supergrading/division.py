"""Graded-division superalgebras: twisted group algebras, standard realizations, eta maps.

A graded-division superalgebra with support T is stored through its cocycle
``X_t X_s = sigma(t, s) X_{t+s}``.  The commutation factor
``beta(t, s) = sigma(t, s) / sigma(s, t)`` and its super-twisted version
``beta_tilde(t, s) = (-1)^{p(t)p(s)} beta(t, s)`` are derived from the table.
"""

from __future__ import annotations

from dataclasses import dataclass

from .abelian import (
    Bicharacter,
    FinAbGroup,
    FiniteSubgroup,
    GroupElement,
    GroupError,
    GSharpElement,
    ParityMap,
    _words,
    duality_decomposition,
    parity_elements,
    radical,
)
from .cyclo import ONE, ZERO, Cyclo, root_of_unity
from .linalg import rank
from .superalgebra import GradedAlgebra

__all__ = [
    "EtaMap",
    "GradedDivisionAlgebra",
    "ExchangeDivisionSpec",
    "DivisionError",
    "to_sharp",
    "sharp_bicharacter",
    "twisted_group_algebra",
    "build_standard_M",
    "build_standard_Q",
    "build_qex_division",
    "transpose_eta",
    "extend_eta",
    "build_exchange_division",
    "exchange_eta_variants",
    "verify_division",
    "center",
    "supercenter",
    "superopposite",
    "elt_label",
]


class DivisionError(ValueError):
    pass


def elt_label(t) -> str:
    return f"X{t}"


def to_sharp(T: FiniteSubgroup) -> FiniteSubgroup:
    """View a subgroup of G as an even subgroup of G#."""
    if not isinstance(T.parent, FinAbGroup):
        return T
    S = T.parent.sharp
    return FiniteSubgroup(S, [GSharpElement(g, 0) for g in T.generators])


def sharp_bicharacter(beta: Bicharacter, Ts: FiniteSubgroup) -> Bicharacter:
    """Transport a bicharacter on T (in G) to the even copy Ts (in G#)."""
    if beta.T.parent == Ts.parent:
        return beta
    return Bicharacter(Ts, {(t, s): beta.table[(t.g, s.g)] for t in Ts.elements for s in Ts.elements}, beta.N)


def base_bicharacter(beta: Bicharacter) -> Bicharacter:
    """Inverse of :func:`sharp_bicharacter` for even subgroups of G#."""
    if isinstance(beta.T.parent, FinAbGroup):
        return beta
    T = beta.T.project_to_base()
    return Bicharacter(T, {(t.g, s.g): v for (t, s), v in beta.table.items()}, beta.N)


class EtaMap:
    """Signs eta(t) = +-1 with phi0(X_t) = eta(t) X_t."""

    def __init__(self, T: FiniteSubgroup, table: dict):
        self.T = T
        self.table = {t: int(table[t]) for t in T.elements}
        if any(v not in (1, -1) for v in self.table.values()):
            raise DivisionError("eta values must be +1 or -1")

    def __call__(self, t) -> int:
        return self.table[t]

    def check(self, beta_tilde: Bicharacter) -> tuple | None:
        """First pair (a, b) violating eta(a+b) = beta_tilde(a, b) eta(a) eta(b), or None."""
        for a in self.T.elements:
            for b in self.T.elements:
                if self.table[a + b] != beta_tilde.sign(a, b) * self.table[a] * self.table[b]:
                    return (a, b)
        return None

    def twist(self, beta_tilde: Bicharacter, t0) -> "EtaMap":
        """t -> beta_tilde(t0, t) eta(t)."""
        return EtaMap(self.T, {t: beta_tilde.sign(t0, t) * v for t, v in self.table.items()})

    def __eq__(self, other):
        return isinstance(other, EtaMap) and self.T == other.T and self.table == other.table

    def __hash__(self):
        return hash(tuple(sorted((t.key(), v) for t, v in self.table.items())))

    def __repr__(self):
        return "EtaMap{" + ", ".join(f"{t}: {v}" for t, v in sorted(self.table.items(), key=lambda x: x[0].key())) + "}"


class GradedDivisionAlgebra:
    """Twisted group algebra span{X_t : t in T} with cocycle sigma."""

    def __init__(self, T: FiniteSubgroup, sigma: dict, matrices: dict | None = None, eta: EtaMap | None = None,
                 meta: dict | None = None):
        if isinstance(T.parent, FinAbGroup):
            raise DivisionError("support must be a subgroup of G#; use to_sharp")
        self.T = T
        self.sigma = sigma
        self.matrices = matrices
        self.eta = eta
        self.meta = dict(meta or {})
        self.parity = ParityMap(T)

    @property
    def group(self) -> FinAbGroup:
        return self.T.parent.base

    @property
    def is_odd(self) -> bool:
        return not self.parity.is_trivial()

    @property
    def dim(self) -> int:
        return self.T.order

    def beta(self) -> Bicharacter:
        N = self.T.exponent
        table = {}
        for t in self.T.elements:
            for s in self.T.elements:
                k = (self.sigma[(t, s)] / self.sigma[(s, t)]).root_exponent(N)
                if k is None:
                    raise DivisionError("commutation factor is not a root of unity of order exp(T)")
                table[(t, s)] = k
        return Bicharacter(self.T, table)

    def beta_tilde(self) -> Bicharacter:
        return self.beta().twisted(self.parity)

    def check_cocycle(self) -> tuple | None:
        """First triple violating the 2-cocycle identity (or normalization), else None."""
        e = self.T.identity
        for t in self.T.elements:
            if self.sigma[(e, t)] != ONE or self.sigma[(t, e)] != ONE:
                return (e, t, e)
        for t in self.T.elements:
            for s in self.T.elements:
                for r in self.T.elements:
                    if self.sigma[(t, s)] * self.sigma[(t + s, r)] != self.sigma[(s, r)] * self.sigma[(t, s + r)]:
                        return (t, s, r)
        return None

    def as_algebra(self) -> GradedAlgebra:
        els = self.T.elements
        pos = {t: i for i, t in enumerate(els)}
        struct = {}
        for t in els:
            for s in els:
                struct[(pos[t], pos[s])] = {pos[t + s]: self.sigma[(t, s)]}
        meta = {"kind": "division"}
        return GradedAlgebra(self.group, [elt_label(t) for t in els], list(els), struct, {pos[self.T.identity]: ONE},
                             "assoc", meta)

    def inverse_coeff(self, t) -> Cyclo:
        """c with X_t^{-1} = c X_{-t}."""
        return self.sigma[(t, -t)].inv()

    def with_eta(self, eta: EtaMap) -> "GradedDivisionAlgebra":
        bad = eta.check(self.beta_tilde())
        if bad is not None:
            raise DivisionError(f"eta is incompatible with beta_tilde at {bad[0]}, {bad[1]}")
        return GradedDivisionAlgebra(self.T, self.sigma, self.matrices, eta, self.meta)

    def __repr__(self):
        return f"GradedDivisionAlgebra(|T|={self.T.order}, odd={self.is_odd})"


# -- constructions ---------------------------------------------------------


def twisted_group_algebra(T: FiniteSubgroup, beta_tilde: Bicharacter, gens: list | None = None) -> GradedDivisionAlgebra:
    """Graded-division superalgebra for (T, beta_tilde) with X_t = X_{g_1}^{a_1} ... X_{g_r}^{a_r}.

    ``gens`` must be a direct basis of T (defaults to the invariant basis);
    the relations are X_{g_i}^{n_i} = 1 with n_i the order of g_i.
    """
    T = to_sharp(T)
    beta_tilde = sharp_bicharacter(beta_tilde, T)
    p = ParityMap(T)
    beta = beta_tilde.twisted(p)
    if not beta.is_alternating():
        raise DivisionError("beta_tilde(t, t) != (-1)^{p(t)} for some t; no graded-division superalgebra exists")
    if gens is None:
        gens = T.invariant_basis()
    orders = [g.order() for g in gens]
    prod = 1
    for n in orders:
        prod *= n
    if prod != T.order:
        raise DivisionError("generators do not form a direct basis of T")
    words = _words(T, gens)
    words = {t: tuple(a % n for a, n in zip(w, orders)) for t, w in words.items()}
    if len(set(words.values())) != T.order:
        raise DivisionError("generators do not form a direct basis of T")
    N = beta.N
    r = len(gens)
    pair_exp = [[beta.table[(gens[j], gens[i])] for i in range(r)] for j in range(r)]
    sigma = {}
    for t in T.elements:
        a = words[t]
        for s in T.elements:
            b = words[s]
            k = 0
            for j in range(r):
                if a[j]:
                    for i in range(j):
                        if b[i]:
                            k += pair_exp[j][i] * a[j] * b[i]
            sigma[(t, s)] = root_of_unity(N, k)
    return GradedDivisionAlgebra(T, sigma, meta={"gens": list(gens)})


def _mat_mul(a, b):
    n = len(a)
    return [[sum((a[i][k] * b[k][j] for k in range(n) if a[i][k] and b[k][j]), ZERO) for j in range(n)] for i in range(n)]


def _find_nonzero(m):
    for i, row in enumerate(m):
        for j, v in enumerate(row):
            if v:
                return i, j
    raise DivisionError("zero matrix")


def _sigma_from_matrices(T: FiniteSubgroup, mats: dict) -> dict:
    sigma = {}
    for t in T.elements:
        for s in T.elements:
            prod = _mat_mul(mats[t], mats[s])
            i, j = _find_nonzero(mats[t + s])
            sigma[(t, s)] = prod[i][j] / mats[t + s][i][j]
    return sigma


def build_standard_M(T: FiniteSubgroup, beta: Bicharacter) -> GradedDivisionAlgebra:
    """Standard realization for (T, beta): X_a e_b' = beta(a, b') e_b', X_b e_b' = e_{b+b'}, X_{a+b} = X_a X_b.

    T may contain odd elements; ``beta`` is then the alternating commutation
    factor, not beta_tilde.
    """
    Ts = to_sharp(T)
    beta = sharp_bicharacter(beta, Ts)
    if not beta.is_alternating():
        raise DivisionError("beta must be alternating")
    if radical(beta).order != 1:
        raise DivisionError("beta is degenerate")
    try:
        A, B, a_gens, b_gens = duality_decomposition(Ts, beta)
    except GroupError as exc:
        raise DivisionError(str(exc)) from exc
    b_els = list(B.elements)
    k = len(b_els)
    pos = {b: i for i, b in enumerate(b_els)}
    mats = {}
    for a in A.elements:
        mats_a = [[ZERO] * k for _ in range(k)]
        for b in b_els:
            mats_a[pos[b]][pos[b]] = beta(a, b)
        for b in B.elements:
            mats_b = [[ZERO] * k for _ in range(k)]
            for bp in b_els:
                mats_b[pos[b + bp]][pos[bp]] = ONE
            mats[a + b] = _mat_mul(mats_a, mats_b)
    sigma = _sigma_from_matrices(Ts, mats)
    return GradedDivisionAlgebra(Ts, sigma, mats, meta={"A": a_gens, "B": b_gens, "type": "M"})


def build_standard_Q(Tplus: FiniteSubgroup, beta_plus: Bicharacter, h: GroupElement) -> GradedDivisionAlgebra:
    """Q(1) (x) D_even: odd central u of degree (h, 1) with u^2 = 1."""
    if not (2 * h).is_identity:
        raise DivisionError("h must satisfy h^2 = e")
    Tp = to_sharp(Tplus)
    if not Tp.is_even():
        raise DivisionError("T+ must be even")
    Dp = build_standard_M(Tp, sharp_bicharacter(beta_plus, Tp))
    tp = GSharpElement(h, 1)
    T = FiniteSubgroup(Tp.parent, list(Tp.generators) + [tp])
    split = {}
    for s in Tp.elements:
        split[s] = (0, s)
        split[s + tp] = (1, s)
    sigma = {}
    for t in T.elements:
        i, a = split[t]
        for s in T.elements:
            j, b = split[s]
            sigma[(t, s)] = Dp.sigma[(a, b)]
    k = len(next(iter(Dp.matrices.values())))
    mats = {}
    for t in T.elements:
        i, a = split[t]
        m = Dp.matrices[a]
        big = [[ZERO] * (2 * k) for _ in range(2 * k)]
        for r in range(k):
            for c in range(k):
                if m[r][c]:
                    if i == 0:
                        big[r][c] = m[r][c]
                        big[k + r][k + c] = m[r][c]
                    else:
                        big[r][k + c] = m[r][c]
                        big[k + r][c] = m[r][c]
        mats[t] = big
    meta = {"type": "Q", "h": h, "t_p": tp, "A": Dp.meta["A"], "B": Dp.meta["B"]}
    return GradedDivisionAlgebra(T, sigma, mats, meta=meta)


def transpose_eta(T: FiniteSubgroup, beta: Bicharacter) -> EtaMap:
    """eta(a + b) = beta(a, b) for the duality decomposition T = A x B (transposition)."""
    Ts = to_sharp(T)
    beta = sharp_bicharacter(beta, Ts)
    if not Ts.is_elementary_2():
        raise DivisionError("T must be an elementary 2-group")
    A, B, _, _ = duality_decomposition(Ts, beta)
    table = {}
    for a in A.elements:
        for b in B.elements:
            table[a + b] = beta.sign(a, b)
    return EtaMap(Ts, table)


def extend_eta(T: FiniteSubgroup, beta_tilde: Bicharacter, values: dict) -> EtaMap:
    """Unique eta with d(eta) = beta_tilde taking the given values on generators."""
    gens = list(values)
    sub = FiniteSubgroup(T.parent, gens)
    if sub != T:
        raise DivisionError("eta values must be given on a generating set")
    table = {T.identity: 1}
    frontier = [T.identity]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = x + g
                if y not in table:
                    table[y] = beta_tilde.sign(x, g) * table[x] * values[g]
                    nxt.append(y)
        frontier = nxt
    eta = EtaMap(T, table)
    if any(table[g] != values[g] for g in gens) or eta.check(beta_tilde) is not None:
        raise DivisionError("prescribed eta values are inconsistent with beta_tilde")
    return eta


def _complement(T: FiniteSubgroup, sub: FiniteSubgroup, extra=None) -> FiniteSubgroup:
    """Greedy complement of ``sub`` in T scanning elements in canonical order."""
    gens: list = []
    comp = FiniteSubgroup(T.parent, [])
    for y in T.elements:
        if y in comp or (extra is not None and not extra(y)):
            continue
        trial = FiniteSubgroup(T.parent, gens + [y])
        if all(z.is_identity or z not in sub for z in trial.elements):
            gens.append(y)
            comp = trial
    if comp.order * sub.order != T.order:
        raise DivisionError("no complement with the required property")
    return comp


@dataclass
class ExchangeDivisionSpec:
    """Data (T, beta_tilde, t_p) for a superinvolution-simple, non-simple division superalgebra."""

    T: FiniteSubgroup
    beta_tilde: Bicharacter
    t_p: GSharpElement
    t1: GSharpElement | None = None

    def validate(self) -> GSharpElement:
        """Check the structural conditions; returns f, the generator of rad beta_tilde."""
        T = self.T
        rad = radical(self.beta_tilde)
        if rad.order != 2:
            raise DivisionError("rad beta_tilde must have order 2")
        f = next(x for x in rad.elements if not x.is_identity)
        if f.parity:
            raise DivisionError("rad beta_tilde must be even")
        for t in T.elements:
            target = T.identity if t.parity == 0 else f
            if 2 * t != target:
                raise DivisionError(f"t^2 = {'e' if t.parity == 0 else 'f'} fails for t = {t}")
        p = ParityMap(T)
        if self.t_p not in parity_elements(T, self.beta_tilde, p):
            raise DivisionError("t_p is not a parity element")
        if T.is_even() and not self.t_p.is_identity:
            raise DivisionError("t_p must be e when T is even")
        return f


def build_exchange_division(spec: ExchangeDivisionSpec) -> GradedDivisionAlgebra:
    """C (x) M realization with its superinvolution eta attached.

    C is F Z2 (t_p = e), the Z2 x Z4-graded algebra O (e != t_p even) or F Z4
    (t_p odd); M is the standard realization on a complement K of rad beta+
    with eta given by transposition.
    """
    f = spec.validate()
    T = spec.T
    bt = spec.beta_tilde
    Tplus = T.even_part()
    beta_plus = bt.restrict(Tplus)
    rad_plus = radical(beta_plus)
    tp = spec.t_p
    t1 = None
    if tp.is_identity:
        case = "a"
    elif tp.parity == 0:
        case = "b"
    else:
        case = "c"
    K = _complement(Tplus, rad_plus)
    if case == "b":
        if spec.t1 is not None:
            t1 = spec.t1
            if t1.parity != 1 or any(bt.sign(t1, k) != 1 for k in K.elements):
                raise DivisionError("t1 must be odd with beta_tilde(t1, K) = 1")
        else:
            t1 = next(t for t in T.elements if t.parity == 1 and all(bt.sign(t, k) == 1 for k in K.elements))
        cgens = [tp, t1]
    elif case == "a":
        cgens = [f]
    else:
        cgens = [tp]
    C = FiniteSubgroup(T.parent, cgens)
    if C.order * K.order != T.order:
        raise DivisionError("internal error: C x K does not exhaust T")
    DC = twisted_group_algebra(C, bt.restrict(C), cgens)
    if K.order > 1:
        beta_K = bt.restrict(K)
        DM = build_standard_M(K, beta_K)
        eta_M = transpose_eta(K, beta_K)
    else:
        DM = twisted_group_algebra(K, bt.restrict(K), [])
        eta_M = EtaMap(K, {K.identity: 1})
    if case == "a":
        eta_C = extend_eta(C, bt.restrict(C), {f: -1})
    elif case == "b":
        eta_C = extend_eta(C, bt.restrict(C), {tp: 1, t1: 1})
    else:
        eta_C = extend_eta(C, bt.restrict(C), {tp: 1})
    split = {c + k: (c, k) for c in C.elements for k in K.elements}
    sigma = {}
    for t in T.elements:
        c, k = split[t]
        for s in T.elements:
            c2, k2 = split[s]
            sigma[(t, s)] = DC.sigma[(c, c2)] * DM.sigma[(k, k2)]
    eta = EtaMap(T, {t: eta_C(split[t][0]) * eta_M(split[t][1]) for t in T.elements})
    meta = {"type": "exchange", "case": case, "f": f, "t_p": tp, "t1": t1, "C": cgens, "K": K}
    D = GradedDivisionAlgebra(T, sigma, eta=None, meta=meta)
    return D.with_eta(eta)


def exchange_eta_variants(spec: ExchangeDivisionSpec) -> list[EtaMap]:
    """Both eta maps arising from the two classes of choices of t1 (case e != t_p even)."""
    D = build_exchange_division(spec)
    if D.meta["case"] != "b":
        return [D.eta]
    return [D.eta, D.eta.twist(spec.beta_tilde, spec.t_p)]


def build_qex_division(Tplus: FiniteSubgroup, beta_plus: Bicharacter, h: GroupElement) -> GradedDivisionAlgebra:
    """D_even + w D_even with w central odd of degree (h, 1), w^2 = X_f, phi0(w) = w.

    D_even is the exchange realization of (T+, beta+, e); requires h^2 = f.
    """
    Tp = to_sharp(Tplus)
    bp = sharp_bicharacter(beta_plus, Tp)
    rad = radical(bp)
    if rad.order != 2:
        raise DivisionError("rad beta+ must have order 2")
    f = next(x for x in rad.elements if not x.is_identity)
    if (2 * h) != f.g:
        raise DivisionError("h^2 must equal the generator f of rad beta+")
    De = build_exchange_division(ExchangeDivisionSpec(Tp, bp, Tp.identity))
    w = GSharpElement(h, 1)
    T = FiniteSubgroup(Tp.parent, list(Tp.generators) + [w])
    split = {}
    for s in Tp.elements:
        split[s] = (0, s)
        split[s + w] = (1, s)
    sigma = {}
    for t in T.elements:
        i, a = split[t]
        for s in T.elements:
            j, b = split[s]
            c = De.sigma[(a, b)]
            if i and j:
                c = c * De.sigma[(f, a + b)]
            sigma[(t, s)] = c
    eta = EtaMap(T, {t: De.eta(split[t][1]) for t in T.elements})
    meta = {"type": "qex", "f": f, "t_p": w, "h": h, "t1": None, "case": "c"}
    D = GradedDivisionAlgebra(T, sigma, meta=meta)
    return D.with_eta(eta)


# -- generic checks on graded algebras ---------------------------------------


def verify_division(A: GradedAlgebra) -> bool:
    """True iff every homogeneous component is spanned by one invertible element.

    Over an algebraically closed field a graded-division algebra has
    one-dimensional components, so this is the exact test; invertibility of
    b is tested as nonsingularity of left multiplication by b.
    """
    if A.unit is None or A.dim == 0:
        return False
    for g in A.support():
        idx = A.component(g)
        if len(idx) != 1:
            return False
        i = idx[0]
        rows = [A.basis_product(i, j) for j in range(A.dim)]
        if rank(rows) != A.dim:
            return False
    return True


def center(A: GradedAlgebra) -> list[tuple[dict, GSharpElement]]:
    return [(v, A.degree_of(v)) for v in A.center(super_sign=False)]


def supercenter(A: GradedAlgebra) -> list[tuple[dict, GSharpElement]]:
    return [(v, A.degree_of(v)) for v in A.center(super_sign=True)]


def superopposite(A: GradedAlgebra) -> GradedAlgebra:
    """Same graded space with product a.b = (-1)^{|a||b|} b a."""
    struct = {}
    for (i, j), row in A.struct.items():
        sign = -1 if A.parity(i) and A.parity(j) else 1
        struct[(j, i)] = {k: c * sign for k, c in row.items()}
    meta = dict(A.meta)
    meta["superopposite"] = not meta.get("superopposite", False)
    return GradedAlgebra(A.group, list(A.labels), list(A.degrees), struct, A.unit, A.kind, meta)
