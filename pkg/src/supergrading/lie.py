"""Lie superalgebras obtained from graded associative superalgebras.

Everything is computed by exact linear algebra on bracket tables: the
supercommutator algebra, skew elements of a superinvolution, derived
subalgebras, centers and central quotients.  The family builders chain these
steps on top of the associative models.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .abelian import Bicharacter, FiniteSubgroup, GroupElement, GSharpElement
from .cyclo import ONE, ZERO, Cyclo, as_cyclo
from .forms import SuperinvolutionRep, build_M_star
from .graded_matrix import KappaMap
from .linalg import EchelonBasis, nullspace, vec_axpy
from .superalgebra import CheckResult, GradedAlgebra, quotient, subalgebra

__all__ = [
    "LieError",
    "minus_algebra",
    "skew",
    "derived",
    "center_lie",
    "quotient_center",
    "supertrace",
    "ideal_generated",
    "build_osp",
    "build_P",
    "build_Q_lie",
    "build_A",
    "lie_from_params",
    "LieReport",
    "verify_lie_axioms",
    "is_graded_simple_lie",
    "periplectic_kappa1",
    "LIE_FAMILIES",
    "bracket_profile",
    "WitnessError",
    "monomial_map",
    "check_algebra_map",
    "intertwining_scalars",
    "TransferReport",
    "transfer_check",
]


class LieError(ValueError):
    """Invalid input for a Lie construction."""


def minus_algebra(A: GradedAlgebra, meta: dict | None = None) -> GradedAlgebra:
    """A with the supercommutator [a, b] = ab - (-1)^{|a||b|} ba."""
    struct = {}
    n = A.dim
    for i in range(n):
        for j in range(n):
            row = dict(A.basis_product(i, j))
            ba = A.basis_product(j, i)
            if ba:
                sign = ONE if (A.parity(i) and A.parity(j)) else -ONE
                vec_axpy(row, sign, ba)
            if row:
                struct[(i, j)] = row
    m = dict(A.meta) if meta is None else dict(meta)
    return GradedAlgebra(A.group, A.labels, A.degrees, struct, None, "lie", m)


def skew(A: GradedAlgebra, phi: SuperinvolutionRep, meta: dict | None = None) -> GradedAlgebra:
    """Skew elements {r : phi(r) = -r} with the supercommutator."""
    if phi.algebra is not A:
        raise LieError("phi acts on a different algebra")
    if not phi.check_degree_preserving():
        raise LieError("phi does not preserve degrees")
    if not phi.is_involutive():
        raise LieError("phi is not an involution")
    return subalgebra(minus_algebra(A), phi.skew_basis(), True, meta)


def _brackets(L: GradedAlgebra):
    for (i, j), row in sorted(L.struct.items()):
        if i <= j:
            yield row


def derived(L: GradedAlgebra, meta: dict | None = None) -> GradedAlgebra:
    """[L, L] with the induced grading and bracket."""
    return subalgebra(L, _brackets(L), True, meta if meta is not None else dict(L.meta))


def center_lie(L: GradedAlgebra) -> list[dict]:
    """Homogeneous basis of {z : [z, L] = 0}."""
    out = []
    for g in L.support():
        idxs = L.component(g)
        col = {idx: c for c, idx in enumerate(idxs)}
        rows = []
        for b in range(L.dim):
            eqs: dict = {}
            for idx in idxs:
                for k, c in L.struct.get((idx, b), {}).items():
                    eqs.setdefault(k, {})[col[idx]] = c
            rows.extend(eqs.values())
        for v in nullspace(rows, len(idxs)):
            out.append({idxs[c]: a for c, a in v.items()})
    return out


def quotient_center(L: GradedAlgebra, meta: dict | None = None) -> GradedAlgebra:
    """L / Z(L); the ideal property of the center is re-checked on the table."""
    Z = center_lie(L)
    if not Z:
        return L
    eb = EchelonBasis()
    for z in Z:
        eb.add(z)
    for z in Z:
        for b in range(L.dim):
            if eb.reduce(L.mul(z, {b: ONE})):
                raise LieError("center is not an ideal; bracket table is inconsistent")
    return quotient(L, Z, meta if meta is not None else dict(L.meta))


def supertrace(X, parities) -> Cyclo:
    """tr of the even-even block minus tr of the odd-odd block of a square matrix."""
    n = len(X)
    if any(len(r) != n for r in X) or len(parities) != n:
        raise ValueError("supertrace needs a square matrix and one parity per row")
    acc = ZERO
    for i in range(n):
        c = as_cyclo(X[i][i])
        acc = acc - c if parities[i] % 2 else acc + c
    return acc


def ideal_generated(L: GradedAlgebra, gens: list[dict]) -> EchelonBasis:
    """Echelon basis of the smallest ideal containing ``gens``."""
    eb = EchelonBasis()
    todo = []
    for v in gens:
        w = eb.add(v)
        if w is not None:
            todo.append(dict(w))
    while todo and len(eb) < L.dim:
        v = todo.pop()
        for b in range(L.dim):
            w = eb.add(L.mul({b: ONE}, v))
            if w is not None:
                todo.append(dict(w))
    return eb


# -- family builders ------------------------------------------------------------


def _tag(L: GradedAlgebra, **kw) -> GradedAlgebra:
    L.meta.update(kw)
    return L


def build_osp(T: FiniteSubgroup, beta: Bicharacter, kappa0: KappaMap, kappa1: KappaMap,
              g0: GSharpElement | GroupElement) -> GradedAlgebra:
    """Skew elements of the M* model with an even g0."""
    g0s = g0 if isinstance(g0, GSharpElement) else GSharpElement(g0, 0)
    if g0s.parity:
        raise LieError("osp needs an even g0; odd g0 gives the periplectic series")
    M = build_M_star(T, beta, kappa0, kappa1, g0s)
    L = skew(M.algebra, M.phi)
    return _tag(L, family="osp", lie=True)


def periplectic_kappa1(kappa0: KappaMap, h0: GroupElement) -> KappaMap:
    """kappa1(x) = kappa0(h0^{-1} x^{-1}), forced by an odd form of degree (h0, 1)."""
    return KappaMap(kappa0.H, [(-h0 - c.rep, m) for c, m in kappa0.items()])


def build_P(T: FiniteSubgroup, beta: Bicharacter, kappa0: KappaMap, h0: GroupElement) -> GradedAlgebra:
    """Derived subalgebra of the skew elements of M* with g0 = (h0, 1)."""
    kappa1 = periplectic_kappa1(kappa0, h0)
    M = build_M_star(T, beta, kappa0, kappa1, GSharpElement(h0, 1))
    L = derived(skew(M.algebra, M.phi))
    return _tag(L, family="p", lie=True)


def build_Q_lie(params) -> GradedAlgebra:
    """Type I from Q-gradings (supercommutator), Type II from Q^ex (skew elements).

    Either way the derived subalgebra is taken and its computed center factored out.
    """
    from .classify import QexPlus, Qgr

    if isinstance(params, Qgr):
        L = minus_algebra(params.build())
        typ = "I"
    elif isinstance(params, QexPlus):
        M = params.build()
        L = skew(M.algebra, M.phi)
        typ = "II"
    else:
        raise LieError("series Q needs Qgr (Type I) or QexPlus (Type II) parameters")
    n = params.shape()[0]
    if n < 3:
        raise LieError("series Q needs Q(n+1) with n >= 2")
    L = quotient_center(derived(L))
    return _tag(L, family=f"q-lie-{1 if typ == 'I' else 2}", lie=True, type=typ)


_A_SUBTYPES = {
    "m-even": ("I", "I_M"),
    "m-odd": ("I", "I_Q"),
    "mex-odd": ("II", "II_Q"),
}


def build_A(params) -> GradedAlgebra:
    """sl(m|n) for m != n and psl(n|n) with the grading induced by the parameters.

    Type I parameters (MEven, MOdd) grade S = M(m, n) and L comes from the
    supercommutator of S; Type II parameters (MexEven, MexOdd) come with a
    superinvolution on S x S^sop and L comes from its skew elements.  The
    traceless part is the derived subalgebra; the center is then factored out.
    """
    from .classify import MEven, MexEven, MexOdd, MOdd

    if not isinstance(params, (MEven, MOdd, MexEven, MexOdd)):
        raise LieError("series A needs MEven, MOdd, MexEven or MexOdd parameters")
    m, n = params.shape()
    if m == n and m <= 2:
        raise LieError(f"psl({m}|{n}) is out of scope (A(1,1) and smaller are excluded)")
    if m + n < 3:
        raise LieError("series A needs m + n >= 3")
    if isinstance(params, MexEven):
        typ = "II"
        subtype = "II_P" if params.g0.parity else "II_osp"
    else:
        typ, subtype = _A_SUBTYPES[params.family]
    if m != n and subtype in ("I_Q", "II_P", "II_Q"):
        raise LieError(f"subtype {subtype} only occurs for psl(n|n)")
    built = params.build()
    if typ == "I":
        L = minus_algebra(built)
    else:
        L = skew(built.algebra, built.phi)
    L = quotient_center(derived(L))
    return _tag(L, family=f"a-{1 if typ == 'I' else 2}", lie=True, type=typ, subtype=subtype,
                shape=[m, n])


LIE_FAMILIES = ("osp", "p", "q-lie-1", "q-lie-2", "a-1", "a-2")


def lie_from_params(params) -> GradedAlgebra:
    """Dispatch on the associative parameter record to the matching Lie family."""
    from .classify import MEven, MexEven, MexOdd, MOdd, MStar, QexPlus, Qgr

    if isinstance(params, MStar):
        if params.g0.parity:
            if params.kappa1 != periplectic_kappa1(params.kappa0, params.g0.g):
                raise LieError("kappa1 is not the dual of kappa0 for this odd g0")
            return build_P(params.T, params.beta, params.kappa0, params.g0.g)
        return build_osp(params.T, params.beta, params.kappa0, params.kappa1, params.g0)
    if isinstance(params, (Qgr, QexPlus)):
        return build_Q_lie(params)
    if isinstance(params, (MEven, MOdd, MexEven, MexOdd)):
        return build_A(params)
    raise LieError(f"no Lie family for {type(params).__name__}")


# -- verification ---------------------------------------------------------------


@dataclass
class LieReport:
    checks: list[CheckResult]

    @property
    def ok(self) -> bool:
        return all(self.checks)

    def failures(self) -> list[CheckResult]:
        return [c for c in self.checks if not c]


def verify_lie_axioms(L: GradedAlgebra, force_python: bool = False) -> LieReport:
    """Grading, super-anticommutativity and super Jacobi on all basis pairs and triples."""
    return LieReport([L.check_grading(), L.check_super_anticommutativity(), L.check_jacobi(force_python)])


def _random_coeff(rng: random.Random) -> Cyclo:
    while True:
        q = Fraction(rng.randint(-100, 100), rng.randint(1, 100))
        if q:
            return as_cyclo(q)


def _generates_all(L: GradedAlgebra, v: dict) -> bool:
    return len(ideal_generated(L, [v])) == L.dim


def _resolved_by_brackets(L: GradedAlgebra, comp: list[int], resolved: set[int]) -> bool:
    """Does x -> ([b, x])_b, read on resolved basis vectors, have zero kernel on span(comp)?"""
    col = {idx: c for c, idx in enumerate(comp)}
    rows = []
    for b in range(L.dim):
        eqs: dict = {}
        for idx in comp:
            for k, c in L.struct.get((b, idx), {}).items():
                if k in resolved:
                    eqs.setdefault(k, {})[col[idx]] = c
        rows.extend(eqs.values())
    return not nullspace(rows, len(comp))


def _resolved_by_burnside(L: GradedAlgebra, g: GSharpElement) -> bool:
    """Do degree-preserving products of ad-operators span End(L_g)?

    If so every nonzero x in L_g generates L_g under ad, so the ideal it
    generates contains the basis of L_g.
    """
    comp = L.component(g)
    d = len(comp)
    support = L.support()
    pos = {h: {idx: c for c, idx in enumerate(L.component(h))} for h in support}
    # operators L_g -> L_h stored as sparse vectors over (row, col) pairs
    spans = {h: EchelonBasis() for h in support}
    start = {(c, c): ONE for c in range(d)}
    spans[g].add(start)
    todo = [(g, start)]
    while todo:
        if len(spans[g]) == d * d:
            return True
        h, op = todo.pop()
        for b in range(L.dim):
            target = h + L.degrees[b]
            if target not in spans:
                continue
            new: dict = {}
            for (r, c), a in op.items():
                idx = L.component(h)[r]
                for k, coef in L.struct.get((b, idx), {}).items():
                    key = (pos[target][k], c)
                    new[key] = new.get(key, ZERO) + a * coef
            new = {k: v for k, v in new.items() if v}
            if not new:
                continue
            w = spans[target].add(new)
            if w is not None:
                todo.append((target, dict(w)))
    return len(spans[g]) == d * d


def is_graded_simple_lie(L: GradedAlgebra, trials: int = 8, seed: int = 0, exact_limit: int = 40) -> str:
    """'true', 'false' or 'probably_true'.

    'false' comes with a concrete proper graded ideal (derived algebra,
    center, or the ideal generated by a basis vector).  'true' is returned
    when every homogeneous component is shown to consist of generators of L;
    otherwise randomized homogeneous elements are tried.
    """
    if L.dim == 0 or not L.struct:
        return "false"
    if len(derived(L).labels) < L.dim:
        return "false"
    if center_lie(L):
        return "false"
    for i in range(L.dim):
        if not _generates_all(L, {i: ONE}):
            return "false"
    support = L.support()
    comps = {g: L.component(g) for g in support}
    resolved_deg = {g for g in support if len(comps[g]) == 1}
    changed = True
    while changed:
        changed = False
        resolved = {i for g in resolved_deg for i in comps[g]}
        for g in support:
            if g not in resolved_deg and _resolved_by_brackets(L, comps[g], resolved):
                resolved_deg.add(g)
                changed = True
    if len(resolved_deg) < len(support) and L.dim <= exact_limit:
        for g in support:
            if g not in resolved_deg and _resolved_by_burnside(L, g):
                resolved_deg.add(g)
    if len(resolved_deg) == len(support):
        return "true"
    rng = random.Random(seed)
    for g in support:
        if g in resolved_deg:
            continue
        for _ in range(trials):
            v = {i: _random_coeff(rng) for i in comps[g]}
            if not _generates_all(L, v):
                return "false"
    return "probably_true"


# -- invariants and witness transport -------------------------------------------


def bracket_profile(L: GradedAlgebra) -> tuple:
    """Component dimensions plus rank of [L_a, L_b] -> L_{a+b} for every pair of degrees."""
    comps = {g: L.component(g) for g in L.support()}
    ranks = []
    for a in L.support():
        for b in L.support():
            eb = EchelonBasis()
            for i in comps[a]:
                for j in comps[b]:
                    row = L.basis_product(i, j)
                    if row:
                        eb.add(row)
            if len(eb):
                ranks.append((a.key(), b.key(), len(eb)))
    return (L.fingerprint(), tuple(ranks))


class WitnessError(ValueError):
    """The map suggested by an isomorphism witness could not be realized."""


def _root(v: Cyclo, n: int) -> Cyclo:
    """An n-th root of a root of unity v."""
    from .cyclo import root_of_unity

    v = v.canonical()
    N = 2 * v.n
    k = v.root_exponent(N)
    if k is None:
        raise WitnessError(f"{v} is not a root of unity")
    return root_of_unity(N * n, k)


def _row_matching(gp, gq, TD: FiniteSubgroup, h: GSharpElement, anti: bool):
    """pi, u with gq[pi(i)] = (-gp[i] if anti else gp[i]) + h + u_i and u_i in TD."""
    if len(gp) != len(gq):
        raise WitnessError("different numbers of rows")
    free = list(range(len(gq)))
    pi, u = [], []
    for g in gp:
        base = (-g if anti else g) + h
        for j in free:
            if gq[j] - base in TD:
                pi.append(j)
                u.append(gq[j] - base)
                free.remove(j)
                break
        else:
            raise WitnessError(f"no row of the target matches degree {base}")
    return pi, u


def _sign(a: int, b: int) -> Cyclo:
    return -ONE if (a and b) else ONE


def _coef(v: dict, idx: int) -> Cyclo:
    if set(v) != {idx}:
        raise WitnessError("product is not a multiple of the expected basis vector")
    return v[idx]


def monomial_map(mp, mq, h: GSharpElement, anti: bool = False) -> list[dict]:
    """A graded (anti-)isomorphism M_k(D) -> M_k(D') sending matrix units to scalar multiples.

    Rows are matched by h (and inverted when ``anti``); scalars are propagated
    from E_1j, E_j1 and E_11 X_s.  The result is not checked here.
    """
    Ap, Aq = mp.algebra, mq.algebra
    TD = mp.D.T
    if mq.D.T != TD:
        raise WitnessError("division algebras have different supports")
    pi, u = _row_matching(mp.gamma, mq.gamma, TD, h, anti)
    e = TD.identity
    k = mp.k

    def target(i, j, s):
        if anti:
            return mq.index(pi[j], pi[i], s + u[i] - u[j])
        return mq.index(pi[i], pi[j], s - u[i] + u[j])

    par = [Ap.parity(x) for x in range(Ap.dim)]

    def prod(x: dict, y: dict, a: int, b: int) -> dict:
        """Image of e_a e_b from images x, y of e_a, e_b."""
        return vec_scale_sign(Aq.mul(y, x), _sign(par[a], par[b])) if anti else Aq.mul(x, y)

    img: dict[int, dict] = {}
    i11 = mp.index(0, 0, e)
    img[i11] = {target(0, 0, e): ONE}
    for j in range(1, k):
        a = mp.index(0, j, e)
        b = mp.index(j, 0, e)
        img[a] = {target(0, j, e): ONE}
        tb = target(j, 0, e)
        c = _coef(prod(img[a], {tb: ONE}, a, b), target(0, 0, e))
        img[b] = {tb: c.inv()}
    # E_11 X_s -> lam_s E_11 X_s; lam is propagated along the invariant basis of TD,
    # and each generator value is an n-th root fixed by closing its cycle
    def step(cur, x, lam_cur, lam_x):
        a, b = mp.index(0, 0, cur), mp.index(0, 0, x)
        want = _coef(Ap.mul({a: ONE}, {b: ONE}), mp.index(0, 0, cur + x))
        got = prod({target(0, 0, cur): lam_cur}, {target(0, 0, x): lam_x}, a, b)
        return _coef(got, target(0, 0, cur + x)) / want

    lam = {e: ONE}
    for x in TD.invariant_basis():
        n = x.order()
        cur, val = e, ONE
        for _ in range(n):
            val = step(cur, x, val, ONE)
            cur = cur + x
        lx = _root(val.inv(), n)
        for s in list(lam):
            cur, val = s, lam[s]
            for _ in range(n - 1):
                val = step(cur, x, val, lx)
                cur = cur + x
                lam[cur] = val
    for s in TD.elements:
        img[mp.index(0, 0, s)] = {target(0, 0, s): lam[s]}
    # general E_ij X_s = E_i1 (E_11 X_s) E_1j / c
    for i in range(k):
        for j in range(k):
            for s in TD.elements:
                idx = mp.index(i, j, s)
                if idx in img:
                    continue
                a, b, c = mp.index(i, 0, e), mp.index(0, 0, s), mp.index(0, j, e)
                src = Ap.mul(Ap.mul({a: ONE}, {b: ONE}), {c: ONE})
                want = _coef(src, idx)
                if anti:
                    bc = mp.index(0, j, s)
                    sgn = _sign(par[a], par[bc]) * _sign(par[b], par[c])
                    got = Aq.mul(Aq.mul(img[c], img[b]), img[a])
                    got = vec_scale_sign(got, sgn)
                else:
                    got = Aq.mul(Aq.mul(img[a], img[b]), img[c])
                img[idx] = {t: v / want for t, v in got.items()}
    return [img[x] for x in range(Ap.dim)]


def vec_scale_sign(v: dict, s: Cyclo) -> dict:
    return v if s == ONE else {k: -c for k, c in v.items()}


def check_algebra_map(Ap: GradedAlgebra, Aq: GradedAlgebra, images: list[dict], anti: bool = False) -> CheckResult:
    """Degree-preserving bijective (anti-)homomorphism on all basis pairs."""
    for i, v in enumerate(images):
        if not v or any(Aq.degrees[t] != Ap.degrees[i] for t in v):
            return CheckResult("witness-map", False, f"image of {Ap.labels[i]} has the wrong degree")
    eb = EchelonBasis()
    for v in images:
        eb.add(v)
    if len(eb) != Aq.dim or Ap.dim != Aq.dim:
        return CheckResult("witness-map", False, "not bijective")

    def apply(v):
        out: dict = {}
        for i, c in v.items():
            vec_axpy(out, c, images[i])
        return out

    for a in range(Ap.dim):
        for b in range(Ap.dim):
            lhs = apply(Ap.basis_product(a, b))
            if anti:
                rhs = vec_scale_sign(Aq.mul(images[b], images[a]), _sign(Ap.parity(a), Ap.parity(b)))
            else:
                rhs = Aq.mul(images[a], images[b])
            if lhs != {k: c for k, c in rhs.items() if c}:
                return CheckResult("witness-map", False, f"fails on ({Ap.labels[a]}, {Ap.labels[b]})")
    return CheckResult("witness-map", True)


def _apply(images: list[dict], v: dict) -> dict:
    out: dict = {}
    for i, c in v.items():
        vec_axpy(out, c, images[i])
    return out


def _monomial(v: dict) -> tuple[int, Cyclo]:
    if len(v) != 1:
        raise WitnessError("superinvolution is not monomial in the matrix-unit basis")
    (k, c), = v.items()
    return k, c


def intertwining_scalars(mq, phi_q: SuperinvolutionRep, psi: list[dict]) -> list[Cyclo]:
    """Diagonal c with phi_q Int(c) = Int(c) psi, for monomial superadjunctions sharing a pattern."""
    k = mq.k
    e = mq.D.T.identity
    pi = [mq.unpack(_monomial(phi_q.images[mq.index(i, i, e)])[0])[0] for i in range(k)]
    ratio = {}
    for b in range(mq.algebra.dim):
        t1, a1 = _monomial(phi_q.images[b])
        t2, a2 = _monomial(psi[b])
        if t1 != t2:
            raise WitnessError("transported superinvolution has a different pattern")
        ratio[b] = a2 / a1
    d = [ONE] + [ratio[mq.index(0, j, e)].inv() for j in range(1, k)]
    for b, r in ratio.items():
        i, j, _ = mq.unpack(b)
        if d[i] / d[j] != r:
            raise WitnessError("no diagonal rescaling intertwines the superinvolutions")
    c = [None] * k
    for i in range(k):
        if c[i] is not None:
            continue
        if pi[i] == i:
            c[i] = _root(d[i], 2)
        else:
            if d[i] != d[pi[i]]:
                raise WitnessError("paired rows need equal rescaling products")
            c[i], c[pi[i]] = d[i], ONE
    return c


@dataclass
class TransferReport:
    """Associative decision against the Lie-level invariants and witness map."""

    assoc: bool
    invariants_equal: bool
    witness_ok: bool | None
    branch: str | None = None
    detail: str = ""

    @property
    def lie(self) -> bool:
        return self.invariants_equal and bool(self.witness_ok)

    @property
    def agree(self) -> bool:
        return self.assoc == self.lie


def _witness_shift(res) -> tuple[GSharpElement, bool]:
    branch = res.branch or "id"
    anti = branch.startswith("inv-")
    core = branch[4:] if anti else branch
    return GSharpElement(res.witness, 1 if core in ("swap", "ii") else 0), anti


def _lie_map_ok(A_p, A_q, vectors: list[dict], images: list[dict], sign: Cyclo) -> bool:
    """sign * Theta preserves the supercommutator on span(vectors)."""
    def br(A, x, y):
        out = A.mul(x, y)
        yx = A.mul(y, x)
        px, py = A.parity(next(iter(x))), A.parity(next(iter(y)))
        vec_axpy(out, ONE if (px and py) else -ONE, yx)
        return out

    def lam(v):
        w = _apply(images, v)
        return w if sign == ONE else {k: -c for k, c in w.items()}

    for x in vectors:
        for y in vectors:
            if lam(br(A_p, x, y)) != br(A_q, lam(x), lam(y)):
                return False
    return True


def transfer_check(p, q) -> TransferReport:
    """Compare the associative isomorphism decision with Lie-level evidence.

    The Lie side is positive only when the graded bracket profiles agree and
    the witness produced by the associative decision yields an explicit
    degree-preserving map that is verified to preserve brackets.
    """
    from .classify import MEven, MOdd, Qgr, TypeIPair, is_isomorphic

    inner_p = p.inner if isinstance(p, TypeIPair) else p
    inner_q = q.inner if isinstance(q, TypeIPair) else q
    type_one = isinstance(inner_p, (MEven, MOdd, Qgr))
    if type_one:
        res = is_isomorphic(TypeIPair(inner_p), TypeIPair(inner_q))
    else:
        res = is_isomorphic(p, q)
    Lp, Lq = lie_from_params(inner_p), lie_from_params(inner_q)
    inv = bracket_profile(Lp) == bracket_profile(Lq)
    if not res.isomorphic:
        return TransferReport(False, inv, None, None, "no witness")
    if not inv:
        return TransferReport(True, False, None, res.branch, "bracket profiles differ")
    h, anti = _witness_shift(res)
    try:
        if type_one:
            Sp, Sq = inner_p.build(), inner_q.build()
            theta = monomial_map(Sp.model, Sq.model, h, anti)
            if not check_algebra_map(Sp, Sq, theta, anti):
                return TransferReport(True, True, False, res.branch, "witness map is not an isomorphism")
            vecs = [{i: ONE} for i in range(Sp.dim)]
            ok = _lie_map_ok(Sp, Sq, vecs, theta, -ONE if anti else ONE)
        else:
            Mp, Mq = inner_p.build(), inner_q.build()
            theta = monomial_map(Mp.model, Mq.model, h, False)
            if not check_algebra_map(Mp.algebra, Mq.algebra, theta):
                return TransferReport(True, True, False, res.branch, "witness map is not an isomorphism")
            inv_theta = [None] * len(theta)
            for x, img in enumerate(theta):
                y, c = _monomial(img)
                inv_theta[y] = {x: c.inv()}
            psi = [_apply(theta, Mp.phi.apply(inv_theta[y])) for y in range(len(theta))]
            c = intertwining_scalars(Mq.model, Mq.phi, psi)
            full = []
            for x, img in enumerate(theta):
                y, a = _monomial(img)
                i, j, _ = Mq.model.unpack(y)
                full.append({y: a * c[i] / c[j]})
            skew_p = Mp.phi.skew_basis()
            ok = all(Mq.phi.apply(_apply(full, v)) == {k: -a for k, a in _apply(full, v).items()}
                     for v in skew_p)
            ok = ok and _lie_map_ok(Mp.algebra, Mq.algebra, skew_p, full, ONE)
    except WitnessError as exc:
        return TransferReport(True, True, False, res.branch, str(exc))
    return TransferReport(True, True, ok, res.branch, "" if ok else "bracket not preserved")
