"""Sesquilinear forms over graded-division superalgebras and the superinvolutions they define.

A form B on a graded D-module with homogeneous basis u_1..u_k is stored as its
matrix Phi_ij = B(u_i, u_j), each nonzero entry a homogeneous element c X_t of D.
The superadjunction with respect to B is computed inside the matrix model
M_k(D) and returned as an explicit linear map on the algebra basis.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .abelian import (
    Bicharacter,
    Coset,
    FinAbGroup,
    FiniteSubgroup,
    GroupElement,
    GSharpElement,
)
from .cyclo import ONE, ZERO, Cyclo, as_cyclo
from .division import (
    DivisionError,
    EtaMap,
    ExchangeDivisionSpec,
    GradedDivisionAlgebra,
    build_exchange_division,
    build_qex_division,
    build_standard_M,
    sharp_bicharacter,
    superopposite,
    to_sharp,
    transpose_eta,
)
from .graded_matrix import KappaMap, MatrixModel, trivial_division
from .linalg import LinAlgError, nullspace, solve, vec_axpy, vec_scale
from .superalgebra import CheckResult, GradedAlgebra, direct_product

__all__ = [
    "AdmissibilityError",
    "AdmissibilityReport",
    "InertiaQuadruple",
    "PhiMatrix",
    "SuperinvolutionRep",
    "supertranspose",
    "mu_x",
    "check_admissible",
    "build_form",
    "superadjunction",
    "superadjunction_rep",
    "bar_form",
    "is_super_hermitian",
    "kappa_star",
    "build_exchange_pair",
    "build_M_star",
    "build_Mex_even",
    "build_Mex_odd",
    "build_Qex",
    "InvolutiveModel",
]


class AdmissibilityError(ValueError):
    """Raised when an inertia quadruple violates an admissibility condition."""

    def __init__(self, condition: str, coset=None, detail: str = ""):
        self.condition = condition
        self.coset = coset
        msg = f"admissibility condition '{condition}' fails"
        if coset is not None:
            msg += f" at {coset}"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


def _eta_value(eta, t) -> Cyclo:
    return as_cyclo(eta(t))


# -- supertranspose ---------------------------------------------------------


def supertranspose(X, parities: list[int]):
    """Supertranspose of a square matrix with the given row parities.

    A scalar matrix (list of lists) in block form [[A, B], [C, D]] goes to
    [[A^T, -C^T], [B^T, D^T]].  A sparse matrix over D, ``{(i, j): {t: c}}``,
    uses the entrywise rule (X^st)_ij = (-1)^{(|i|+|j|)|i|} x_ji, which is the
    one the superadjunction formula is built on.  The two rules differ by the
    parity automorphism X -> (-1)^{|X|} X.
    """
    n = len(parities)
    if isinstance(X, dict):
        out = {}
        for (j, i), entry in X.items():
            sign = -1 if (parities[i] + parities[j]) * parities[i] % 2 else 1
            out[(i, j)] = {t: c * sign for t, c in entry.items()}
        return out
    if len(X) != n or any(len(r) != n for r in X):
        raise ValueError("supertranspose needs a square matrix matching the parity partition")
    return [
        [X[j][i] * (-1 if (parities[i] + parities[j]) * parities[j] % 2 else 1) for j in range(n)]
        for i in range(n)
    ]


def kappa_star(kappa: KappaMap) -> KappaMap:
    """kappa*(x) = kappa(x^{-1})."""
    return kappa.star()


# -- inertia and admissibility -------------------------------------------------


@dataclass
class InertiaQuadruple:
    """(eta, kappa, g0, delta) for a form over D with support T.

    For even D, kappa is the pair (kappa0, kappa1) of multiplicities on G/T for
    even and odd basis vectors.  For odd D the basis is even, kappa lives on
    G/T+ and ``kappa1`` is None.
    """

    eta: object
    kappa0: KappaMap
    kappa1: KappaMap | None
    g0: GSharpElement
    delta: int = 1

    @property
    def T(self) -> FiniteSubgroup:
        return self.eta.T

    @property
    def is_odd_division(self) -> bool:
        return self.kappa1 is None

    def kappa_at(self, x: GSharpElement) -> int:
        """Multiplicity of the coset xT of G#/T."""
        if self.kappa1 is not None:
            return (self.kappa1 if x.parity else self.kappa0)(x.g)
        return self.kappa0(_even_rep(self.T, x).g)

    def support(self) -> list[GSharpElement]:
        """Section values xi(x) (canonical representatives) for x in supp kappa."""
        out = [GSharpElement(c.rep, 0) for c in self.kappa0.support()]
        if self.kappa1 is not None:
            out += [GSharpElement(c.rep, 1) for c in self.kappa1.support()]
        return out


def _odd_element(T: FiniteSubgroup) -> GSharpElement | None:
    return next((t for t in T.elements if t.parity), None)


def _even_rep(T: FiniteSubgroup, x: GSharpElement) -> GSharpElement:
    """A representative of xT in G x {0} (needs an odd element of T when x is odd)."""
    if not x.parity:
        return x
    t = _odd_element(T)
    if t is None:
        raise ValueError("an odd coset has no even representative when T is even")
    return x - t


def _section(T: FiniteSubgroup, q: InertiaQuadruple, x: GSharpElement) -> GSharpElement:
    """Canonical section value of the coset xT."""
    if q.kappa1 is not None:
        H = q.kappa0.H
        return GSharpElement(Coset(x.g, H).rep, x.parity)
    xe = _even_rep(T, x)
    return GSharpElement(Coset(xe.g, q.kappa0.H).rep, 0)


def mu_x(eta, g0: GSharpElement, x, delta: int) -> int:
    """(-1)^{|x|} eta(g0 x^2) delta for a self-paired coset x (g0 x^2 in T).

    ``x`` may be any representative (a G# element) or a Coset of T in G#.
    """
    T = eta.T
    rep = x.rep if isinstance(x, Coset) else x
    t = g0 + 2 * rep
    if t not in T:
        raise ValueError(f"coset of {rep} is not self-paired for g0 = {g0}")
    val = _eta_value(eta, t) * (-1 if rep.parity else 1) * delta
    if val == ONE:
        return 1
    if val == -ONE:
        return -1
    raise ValueError("mu is not +-1; eta does not define an involution")


@dataclass
class AdmissibilityReport:
    ok: bool
    condition: str = ""
    coset: object = None
    detail: str = ""

    def __bool__(self):
        return self.ok

    def raise_if_bad(self):
        if not self.ok:
            raise AdmissibilityError(self.condition, self.coset, self.detail)


def _check_kappa_domain(T: FiniteSubgroup, q: InertiaQuadruple) -> str | None:
    odd_T = _odd_element(T) is not None
    if odd_T:
        if q.kappa1 is not None:
            return "over odd D kappa is a single map on G/T+"
        want = T.even_part().project_to_base()
        if q.kappa0.H != want:
            return "kappa must live on G/T+"
    else:
        if q.kappa1 is None:
            return "over even D kappa is a pair (kappa0, kappa1)"
        want = T.project_to_base()
        if q.kappa0.H != want or q.kappa1.H != want:
            return "kappa maps must live on G/T"
    return None


def check_admissible(T: FiniteSubgroup, beta_tilde: Bicharacter, q: InertiaQuadruple) -> AdmissibilityReport:
    """All four admissibility conditions, with the first violation reported."""
    bad = _check_kappa_domain(T, q)
    if bad:
        return AdmissibilityReport(False, "domain", None, bad)
    if q.delta not in (1, -1):
        return AdmissibilityReport(False, "delta", None, "delta must be +1 or -1")
    # (1) d eta = beta_tilde
    for a in T.elements:
        for b in T.elements:
            lhs = _eta_value(q.eta, a + b)
            rhs = beta_tilde(a, b) * _eta_value(q.eta, a) * _eta_value(q.eta, b)
            if lhs != rhs:
                return AdmissibilityReport(False, "d-eta", (a, b), "eta(ab) != beta~(a,b) eta(a) eta(b)")
    if any(_eta_value(q.eta, t) * _eta_value(q.eta, t) != ONE for t in T.elements):
        return AdmissibilityReport(False, "d-eta", None, "eta must take values +-1")
    # (2) finite support holds by construction of KappaMap
    if q.kappa0.is_empty() and (q.kappa1 is None or q.kappa1.is_empty()):
        return AdmissibilityReport(False, "support", None, "kappa is empty")
    for x in q.support():
        y = -q.g0 - x
        # (3) kappa(x) = kappa(g0^{-1} x^{-1})
        if q.kappa_at(x) != q.kappa_at(y):
            return AdmissibilityReport(
                False, "duality", _section(T, q, x),
                f"kappa = {q.kappa_at(x)} but the paired coset {_section(T, q, y)} has {q.kappa_at(y)}",
            )
        # (4) self-paired cosets with mu = -1 have even multiplicity
        if q.g0 + 2 * x in T and mu_x(q.eta, q.g0, x, q.delta) == -1 and q.kappa_at(x) % 2:
            return AdmissibilityReport(False, "parity", _section(T, q, x), "mu_x = -1 needs even multiplicity")
    return AdmissibilityReport(True)


# -- the matrix of a form ------------------------------------------------------


class PhiMatrix:
    """Matrix of a sesquilinear form: entries (i, j) -> (t, c) meaning c X_t."""

    def __init__(self, D: GradedDivisionAlgebra, gamma: list[GSharpElement], entries: dict,
                 g0: GSharpElement, delta: int | None = 1):
        self.D = D
        self.gamma = list(gamma)
        self.k = len(gamma)
        self.entries = {ij: (t, as_cyclo(c)) for ij, (t, c) in entries.items() if c}
        self.g0 = g0
        self.delta = delta

    @property
    def parity(self) -> int:
        return self.g0.parity

    def module_parity(self, i: int) -> int:
        return self.gamma[i].parity

    def check_degrees(self) -> CheckResult:
        for (i, j), (t, _) in self.entries.items():
            if t not in self.D.T:
                return CheckResult("form-degree", False, f"entry ({i},{j}) has degree {t} outside T")
            if t != self.g0 + self.gamma[i] + self.gamma[j]:
                return CheckResult("form-degree", False, f"entry ({i},{j}) has degree {t}, expected "
                                   f"{self.g0 + self.gamma[i] + self.gamma[j]}")
        return CheckResult("form-degree", True)

    def as_matrix(self) -> dict:
        return {ij: {t: c} for ij, (t, c) in self.entries.items()}

    def vector(self, model: MatrixModel) -> dict:
        return model.to_vector(self.as_matrix())

    def permutation(self) -> dict | None:
        """Column of the unique entry in each row, if Phi is monomial."""
        perm = {}
        for (i, j) in self.entries:
            if i in perm:
                return None
            perm[i] = j
        if len(perm) != self.k or len(set(perm.values())) != self.k:
            return None
        return perm

    def inverse_vector(self, model: MatrixModel) -> dict:
        perm = self.permutation()
        if perm is not None:
            out = {}
            for i, j in perm.items():
                t, c = self.entries[(i, j)]
                out[model.index(j, i, -t)] = c.inv() * self.D.inverse_coeff(t)
            return out
        # general case: solve Phi Y = 1 in the algebra
        A = model.algebra
        n = A.dim
        phi = self.vector(model)
        cols = [A.mul(phi, {b: ONE}) for b in range(n)]
        rows = [dict() for _ in range(n)]
        for b, col in enumerate(cols):
            for r, c in col.items():
                rows[r][b] = c
        rhs = [A.unit.get(r, ZERO) for r in range(n)]
        y = solve(rows, rhs, n)
        if y is None or A.mul(y, phi) != A.unit:
            raise LinAlgError("Phi is not invertible over D")
        return y

    def __eq__(self, other):
        return (isinstance(other, PhiMatrix) and self.gamma == other.gamma and self.entries == other.entries
                and self.g0 == other.g0)

    def __repr__(self):
        return f"PhiMatrix(k={self.k}, g0={self.g0}, entries={len(self.entries)})"


def bar_form(Phi: PhiMatrix, eta) -> PhiMatrix:
    """B-bar(u_i, u_j) = (-1)^{|i||j|} phi0^{-1}(Phi_ji)."""
    out = {}
    for (j, i), (t, c) in Phi.entries.items():
        sign = -1 if Phi.module_parity(i) and Phi.module_parity(j) else 1
        out[(i, j)] = (t, c * _eta_value(eta, t).inv() * sign)
    return PhiMatrix(Phi.D, Phi.gamma, out, Phi.g0, None)


def is_super_hermitian(Phi: PhiMatrix, eta) -> int | None:
    """+1 if B-bar = B, -1 if B-bar = -B, None otherwise."""
    bar = bar_form(Phi, eta)
    if bar.entries == Phi.entries:
        return 1
    neg = {ij: (t, -c) for ij, (t, c) in Phi.entries.items()}
    if bar.entries == neg:
        return -1
    return None


def build_form(D: GradedDivisionAlgebra, q: InertiaQuadruple) -> PhiMatrix:
    """Block matrix of the standard super-Hermitian form with inertia q (delta = 1)."""
    T = D.T
    if q.T != T:
        raise ValueError("eta must be defined on the support of D")
    if q.delta != 1:
        raise ValueError("public constructors fix delta = 1")
    check_admissible(T, D.beta_tilde(), q).raise_if_bad()
    g0 = q.g0
    if D.is_odd:
        if g0.parity:
            raise ValueError("over odd D the form is taken even (g0 in G)")
        gamma = [GSharpElement(g, 0) for g in q.kappa0.realize()]
        blocks = [(0, q.kappa0, 0)]
    elif g0.parity == 0:
        gamma = [GSharpElement(g, 0) for g in q.kappa0.realize()] + [GSharpElement(g, 1) for g in q.kappa1.realize()]
        blocks = [(0, q.kappa0, 0), (1, q.kappa1, q.kappa0.total)]
    else:
        # odd form over even D: U1 is the shifted dual of U0, Phi = [[0, I], [I, 0]]
        evens = [GSharpElement(g, 0) for g in q.kappa0.realize()]
        odds = [-g0 - x for x in evens]
        k = len(evens)
        entries = {}
        for a in range(k):
            entries[(a, k + a)] = (T.identity, ONE)
            entries[(k + a, a)] = (T.identity, ONE)
        return PhiMatrix(D, evens + odds, entries, g0, 1)
    entries = {}
    for parity, kappa, offset in blocks:
        rows: dict = {}
        pos = offset
        for c, m in kappa.items():
            rows[c] = list(range(pos, pos + m))
            pos += m
        done = set()
        for c, m in kappa.items():
            if c in done:
                continue
            x = GSharpElement(c.rep, parity)
            ybase = -g0 - x
            y = Coset(ybase.g if not D.is_odd else _even_rep(T, ybase).g, kappa.H)
            yx = GSharpElement(y.rep, parity)
            t = g0 + x + yx
            sign = (-1 if parity else 1) * q.delta
            e = _eta_value(q.eta, t) * sign
            if y == c:
                if e == ONE:
                    for r in rows[c]:
                        entries[(r, r)] = (t, ONE)
                else:
                    h = m // 2
                    for a in range(h):
                        entries[(rows[c][a], rows[c][h + a])] = (t, ONE)
                        entries[(rows[c][h + a], rows[c][a])] = (t, -ONE)
                done.add(c)
            else:
                for rx, ry in zip(rows[c], rows[y]):
                    entries[(rx, ry)] = (t, ONE)
                    entries[(ry, rx)] = (t, e)
                done.add(c)
                done.add(y)
    return PhiMatrix(D, gamma, entries, g0, 1)


# -- superinvolutions as explicit linear maps ---------------------------------


class SuperinvolutionRep:
    """A degree-preserving linear map phi on an algebra, stored on its basis."""

    def __init__(self, algebra: GradedAlgebra, images: list[dict], kind: str, meta: dict | None = None):
        if len(images) != algebra.dim:
            raise ValueError("one image per basis vector is required")
        self.algebra = algebra
        self.images = images
        self.kind = kind
        self.meta = dict(meta or {})

    def apply(self, v: dict) -> dict:
        out: dict = {}
        for i, c in v.items():
            vec_axpy(out, c, self.images[i])
        return out

    def check_degree_preserving(self) -> CheckResult:
        A = self.algebra
        for i, img in enumerate(self.images):
            if any(A.degrees[k] != A.degrees[i] for k in img):
                return CheckResult("degree-preserving", False, f"image of {A.labels[i]}")
        return CheckResult("degree-preserving", True)

    def check_involution(self) -> CheckResult:
        for i in range(self.algebra.dim):
            if self.apply(self.images[i]) != {i: ONE}:
                return CheckResult("involution", False, f"phi^2 moves {self.algebra.labels[i]}")
        return CheckResult("involution", True)

    def is_involutive(self) -> bool:
        return bool(self.check_involution())

    def check_anti_automorphism(self) -> CheckResult:
        """phi(ab) = (-1)^{|a||b|} phi(b) phi(a) on all basis pairs."""
        A = self.algebra
        for i in range(A.dim):
            for j in range(A.dim):
                lhs = self.apply(A.basis_product(i, j))
                rhs = A.mul(self.images[j], self.images[i])
                if A.parity(i) and A.parity(j):
                    rhs = vec_scale(rhs, -1)
                if lhs != rhs:
                    return CheckResult("anti-automorphism", False, f"({A.labels[i]}, {A.labels[j]})")
        return CheckResult("anti-automorphism", True)

    def checks(self) -> list[CheckResult]:
        return [self.check_degree_preserving(), self.check_anti_automorphism(), self.check_involution()]

    def eigenspace(self, sign: int) -> list[dict]:
        """Homogeneous basis of {r : phi(r) = sign r}."""
        A = self.algebra
        out = []
        for g in A.support():
            idxs = A.component(g)
            col = {b: n for n, b in enumerate(idxs)}
            eqs: dict = {}
            for b in idxs:
                for k, c in self.images[b].items():
                    eqs.setdefault(k, {})
                    vec_axpy(eqs[k], ONE, {col[b]: c})
                eqs.setdefault(b, {})
                vec_axpy(eqs[b], as_cyclo(-sign), {col[b]: ONE})
            for v in nullspace([r for r in eqs.values() if r], len(idxs)):
                out.append({idxs[c]: a for c, a in v.items()})
        return out

    def skew_basis(self) -> list[dict]:
        return self.eigenspace(-1)


def _stransp_image(model: MatrixModel, i: int, j: int, t, eta, odd_sign: int) -> dict:
    """phi0(X^st) for X = E_ij (x) X_t, as a vector in the model."""
    D = model.D
    if D.is_odd:
        sign = odd_sign
    else:
        pi, pj = model.row_parity(i), model.row_parity(j)
        sign = -1 if (pi + pj) * pj % 2 else 1
    return {model.index(j, i, t): _eta_value(eta, t) * sign}


def superadjunction(X: dict, Phi: PhiMatrix, eta, model: MatrixModel | None = None) -> dict:
    """Matrix of phi(r) for r with matrix X over D (sum of homogeneous parts)."""
    if model is None:
        model = MatrixModel(Phi.D, Phi.gamma)
    rep = superadjunction_rep(Phi, eta, model)
    return model.from_vector(rep.apply(model.to_vector(X)))


def superadjunction_rep(Phi: PhiMatrix, eta, model: MatrixModel | None = None) -> SuperinvolutionRep:
    """phi(X) = Phi^{-1} phi0(X^st) Phi (even D), (-1)^{|B||X|} Phi^{-1} phi0(X^T) Phi (odd D)."""
    if model is None:
        model = MatrixModel(Phi.D, Phi.gamma)
    if model.gamma != Phi.gamma:
        raise ValueError("model and form use different module bases")
    A = model.algebra
    phi = Phi.vector(model)
    phinv = Phi.inverse_vector(model)
    images = []
    for b in range(A.dim):
        i, j, t = model.unpack(b)
        odd_sign = -1 if (Phi.parity and A.parity(b)) else 1
        x = _stransp_image(model, i, j, t, eta, odd_sign)
        images.append(A.mul(A.mul(phinv, x), phi))
    return SuperinvolutionRep(A, images, "adjunction", {"g0": Phi.g0})


# -- exchange superinvolution --------------------------------------------------


def build_exchange_pair(S: GradedAlgebra) -> tuple[GradedAlgebra, SuperinvolutionRep]:
    """S x S^sop with phi(s1, s2-bar) = (s2, s1-bar)."""
    R = direct_product(S, superopposite(S), ("S", "Sop"), meta={"family": "exchange-pair"})
    n = S.dim
    images = [{n + i: ONE} for i in range(n)] + [{i: ONE} for i in range(n)]
    return R, SuperinvolutionRep(R, images, "exchange")


# -- models of graded superalgebras with superinvolution ------------------------


@dataclass
class InvolutiveModel:
    """A matrix model M_k(D) together with its form and superinvolution."""

    model: MatrixModel
    phi_matrix: PhiMatrix
    phi: SuperinvolutionRep
    inertia: InertiaQuadruple
    family: str
    params: dict = field(default_factory=dict)

    @property
    def algebra(self) -> GradedAlgebra:
        return self.model.algebra


def _realize(D: GradedDivisionAlgebra, q: InertiaQuadruple, family: str, params: dict) -> InvolutiveModel:
    Phi = build_form(D, q)
    meta = {"family": family}
    model = MatrixModel(D, Phi.gamma, meta)
    rep = superadjunction_rep(Phi, q.eta, model)
    return InvolutiveModel(model, Phi, rep, q, family, params)


def _as_base_subgroup(T: FiniteSubgroup) -> FiniteSubgroup:
    return T if isinstance(T.parent, FinAbGroup) else T.project_to_base()


def build_M_star(T: FiniteSubgroup, beta: Bicharacter, kappa0: KappaMap, kappa1: KappaMap,
                 g0: GSharpElement) -> InvolutiveModel:
    """M*(T, beta, kappa0, kappa1, g0): transposition on the standard realization and the form above."""
    T = _as_base_subgroup(T)
    if not T.is_elementary_2():
        raise DivisionError("T must be an elementary 2-group")
    Ts = to_sharp(T)
    if T.order == 1:
        D = trivial_division(T.parent)
        eta = EtaMap(D.T, {D.T.identity: 1})
    else:
        bs = sharp_bicharacter(beta, Ts)
        if not (bs.is_alternating() and bs.is_nondegenerate()):
            raise DivisionError("beta must be alternating and nondegenerate")
        D = build_standard_M(T, beta)
        eta = transpose_eta(T, beta)
    D = D.with_eta(eta)
    q = InertiaQuadruple(eta, kappa0, kappa1, g0, 1)
    return _realize(D, q, "m-star", {"T": T, "beta": beta, "kappa0": kappa0, "kappa1": kappa1, "g0": g0})


def build_Mex_even(T: FiniteSubgroup, beta: Bicharacter, kappa0: KappaMap, kappa1: KappaMap,
                   g0: GSharpElement) -> InvolutiveModel:
    """M^ex(T, beta, kappa0, kappa1, g0) over the even exchange realization (t_p = e)."""
    T = _as_base_subgroup(T)
    Ts = to_sharp(T)
    bs = sharp_bicharacter(beta, Ts)
    D = build_exchange_division(ExchangeDivisionSpec(Ts, bs, Ts.identity))
    q = InertiaQuadruple(D.eta, kappa0, kappa1, g0, 1)
    f = D.meta["f"]
    return _realize(D, q, "mex-even",
                    {"T": T, "beta": beta, "kappa0": kappa0, "kappa1": kappa1, "g0": g0, "f": f.g})


def build_Mex_odd(T: FiniteSubgroup, beta_tilde: Bicharacter, t_p: GSharpElement, kappa: KappaMap,
                  g0: GroupElement) -> InvolutiveModel:
    """M^ex(T, beta~, t_p, kappa, g0) for T in G# with odd elements and e != t_p even."""
    if t_p.parity or t_p.is_identity:
        raise DivisionError("t_p must be a nontrivial even parity element")
    D = build_exchange_division(ExchangeDivisionSpec(T, beta_tilde, t_p))
    g0s = g0 if isinstance(g0, GSharpElement) else GSharpElement(g0, 0)
    q = InertiaQuadruple(D.eta, kappa, None, g0s, 1)
    f = D.meta["f"]
    return _realize(D, q, "mex-odd",
                    {"T": T, "beta_tilde": beta_tilde, "t_p": t_p, "kappa": kappa, "g0": g0s.g, "f": f.g})


def build_Qex(Tplus: FiniteSubgroup, beta_plus: Bicharacter, h: GroupElement, kappa: KappaMap,
              g0: GroupElement) -> InvolutiveModel:
    """Q^ex(T+, beta+, h, kappa, g0): D = D_even + w D_even with deg w = (h, 1)."""
    Tplus = _as_base_subgroup(Tplus)
    D = build_qex_division(Tplus, beta_plus, h)
    g0s = g0 if isinstance(g0, GSharpElement) else GSharpElement(g0, 0)
    q = InertiaQuadruple(D.eta, kappa, None, g0s, 1)
    return _realize(D, q, "qex",
                    {"Tplus": Tplus, "beta_plus": beta_plus, "h": h, "kappa": kappa, "g0": g0s.g,
                     "f": D.meta["f"].g})
