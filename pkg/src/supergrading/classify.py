"""Parameters of gradings, isomorphism decisions, canonical forms and censuses.

Each family of graded (super)algebras is described by a small frozen record.
The isomorphism tests decide the existence of a shift g in G (and, where the
classification allows it, a branch such as swapping kappa0 and kappa1 or
inverting the bicharacter) that carries one record to the other.  Shifts are
searched in a finite candidate set: either translates matching supports of
kappa, or solutions of 2g = m.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, replace
from math import gcd, isqrt

from .abelian import (
    Bicharacter,
    Coset,
    FinAbGroup,
    FiniteSubgroup,
    GroupElement,
    GSharpElement,
    ParityMap,
    radical,
    solve_double,
)
from .division import (
    DivisionError,
    EtaMap,
    ExchangeDivisionSpec,
    build_exchange_division,
    build_qex_division,
    sharp_bicharacter,
    to_sharp,
    transpose_eta,
)
from .forms import (
    InertiaQuadruple,
    build_M_star,
    build_Mex_even,
    build_Mex_odd,
    build_Qex,
    check_admissible,
    _even_rep,
)
from .graded_matrix import KappaMap, build_M_even, build_M_odd, build_Q

__all__ = [
    "IsoResult",
    "GradingParams",
    "MEven",
    "MOdd",
    "Qgr",
    "MStar",
    "MexEven",
    "MexOdd",
    "QexPlus",
    "TypeIPair",
    "FAMILIES",
    "act_T_Gsharp",
    "iso_M_even",
    "iso_M_odd",
    "iso_Q",
    "iso_MStar",
    "iso_Mex_even",
    "iso_Mex_odd",
    "iso_Qex",
    "iso_typeI",
    "is_isomorphic",
    "canonicalize",
    "enumerate_raw",
    "enumerate_census",
    "CensusError",
    "shift_kappa_pair",
]


class CensusError(ValueError):
    pass


@dataclass(frozen=True)
class IsoResult:
    isomorphic: bool
    witness: GroupElement | None = None
    branch: str | None = None

    def __bool__(self):
        return self.isomorphic


# -- keys for deterministic ordering --------------------------------------------


def subgroup_key(T: FiniteSubgroup) -> tuple:
    return tuple(e.key() for e in T.elements)


def bichar_key(b: Bicharacter) -> tuple:
    els = b.T.elements
    return tuple(_frac(b.table[(t, s)], b.N) for t in els for s in els)


def _frac(k: int, N: int) -> tuple:
    """Exponent k mod N as a reduced fraction, so tables over different N compare."""
    k %= N
    d = gcd(k, N)
    return (k // d, N // d) if k else (0, 1)


def _kkey(kappa: KappaMap | None) -> tuple:
    return () if kappa is None else kappa.key()


# -- shifting kappa data by elements of G# ----------------------------------------


def shift_kappa_pair(kappa0: KappaMap, kappa1: KappaMap, g: GSharpElement) -> tuple[KappaMap, KappaMap]:
    """g . (kappa0, kappa1) for kappa on G#/T with T even."""
    if g.parity:
        kappa0, kappa1 = kappa1, kappa0
    return kappa0.shift(g.g), kappa1.shift(g.g)


def _shift_candidates(src: list[KappaMap], dst: list[KappaMap]):
    """Shifts g that move the first support coset of the first nonempty source onto the target."""
    for a, b in zip(src, dst):
        if a.is_empty():
            continue
        c = a.support()[0]
        return [d.rep - c.rep for d in b.support()]
    return []


# -- parameter records ------------------------------------------------------------


class GradingParams:
    """Common interface of the parameter records."""

    family: str = ""

    @property
    def group(self) -> FinAbGroup:
        raise NotImplementedError

    def key(self) -> tuple:
        raise NotImplementedError

    def validate(self) -> None:
        raise NotImplementedError

    def branches(self) -> tuple[str, ...]:
        return ("id",)

    def transform(self, g: GroupElement, branch: str = "id") -> "GradingParams":
        raise NotImplementedError

    def support_cosets(self) -> list[Coset]:
        raise NotImplementedError

    def shift_lattice(self) -> list[GroupElement]:
        return [self.group.identity]

    def shape(self) -> tuple[int, int]:
        raise NotImplementedError

    def assoc_dim(self) -> int:
        raise NotImplementedError

    def build(self):
        raise NotImplementedError


def _check_alt_nondeg(beta: Bicharacter, what: str):
    if not beta.is_alternating():
        raise DivisionError(f"{what} must be alternating")
    if radical(beta).order != 1:
        raise DivisionError(f"{what} must be nondegenerate")


def _check_kappa_on(kappa: KappaMap, H: FiniteSubgroup, what: str):
    if kappa.H != H:
        raise ValueError(f"{what} must live on the cosets of {H}")


@dataclass(frozen=True, eq=False)
class MEven(GradingParams):
    T: FiniteSubgroup
    beta: Bicharacter
    kappa0: KappaMap
    kappa1: KappaMap
    family = "m-even"

    @property
    def group(self):
        return self.T.parent

    def key(self):
        return (self.family, subgroup_key(self.T), bichar_key(self.beta), _kkey(self.kappa0), _kkey(self.kappa1))

    def validate(self):
        _check_alt_nondeg(self.beta, "beta")
        _check_kappa_on(self.kappa0, self.T, "kappa0")
        _check_kappa_on(self.kappa1, self.T, "kappa1")
        if self.kappa0.is_empty() and self.kappa1.is_empty():
            raise ValueError("kappa0 and kappa1 cannot both be empty")

    def branches(self):
        return ("shift", "swap")

    def transform(self, g, branch="shift"):
        k0, k1 = (self.kappa0, self.kappa1) if branch in ("shift", "id") else (self.kappa1, self.kappa0)
        return replace(self, kappa0=k0.shift(g), kappa1=k1.shift(g))

    def support_cosets(self):
        return self.kappa0.support() + self.kappa1.support()

    def shape(self):
        r = isqrt(self.T.order)
        return (self.kappa0.total * r, self.kappa1.total * r)

    def assoc_dim(self):
        m, n = self.shape()
        return (m + n) ** 2

    def build(self):
        return build_M_even(self.T, self.beta, self.kappa0, self.kappa1)


@dataclass(frozen=True, eq=False)
class MOdd(GradingParams):
    T: FiniteSubgroup  # subgroup of G# with odd elements
    beta_tilde: Bicharacter
    kappa: KappaMap
    family = "m-odd"

    @property
    def group(self):
        return self.T.parent.base

    @property
    def Tplus(self) -> FiniteSubgroup:
        return self.T.even_part().project_to_base()

    def key(self):
        return (self.family, subgroup_key(self.T), bichar_key(self.beta_tilde), _kkey(self.kappa))

    def validate(self):
        if self.T.is_even():
            raise DivisionError("an odd grading needs odd elements in T")
        _check_alt_nondeg(self.beta_tilde.twisted(ParityMap(self.T)), "the untwisted bicharacter")
        _check_kappa_on(self.kappa, self.Tplus, "kappa")
        if self.kappa.is_empty():
            raise ValueError("kappa cannot be empty")

    def transform(self, g, branch="id"):
        return replace(self, kappa=self.kappa.shift(g))

    def support_cosets(self):
        return self.kappa.support()

    def shape(self):
        n = self.kappa.total * isqrt(self.T.order) // 2
        return (n, n)

    def assoc_dim(self):
        return (2 * self.shape()[0]) ** 2

    def build(self):
        return build_M_odd(self.T, self.beta_tilde, self.kappa)


@dataclass(frozen=True, eq=False)
class Qgr(GradingParams):
    Tplus: FiniteSubgroup
    beta_plus: Bicharacter
    h: GroupElement
    kappa: KappaMap
    family = "q"

    @property
    def group(self):
        return self.Tplus.parent

    def key(self):
        return (self.family, subgroup_key(self.Tplus), bichar_key(self.beta_plus), self.h.key(), _kkey(self.kappa))

    def validate(self):
        if not (2 * self.h).is_identity:
            raise DivisionError("h must satisfy h^2 = e")
        if self.Tplus.order > 1:
            _check_alt_nondeg(self.beta_plus, "beta+")
        _check_kappa_on(self.kappa, self.Tplus, "kappa")
        if self.kappa.is_empty():
            raise ValueError("kappa cannot be empty")

    def transform(self, g, branch="id"):
        return replace(self, kappa=self.kappa.shift(g))

    def support_cosets(self):
        return self.kappa.support()

    def shape(self):
        n = self.kappa.total * isqrt(self.Tplus.order)
        return (n, n)

    def assoc_dim(self):
        return 2 * self.shape()[0] ** 2

    def build(self):
        return build_Q(self.Tplus, self.beta_plus, self.h, self.kappa)


def _f_of(T: FiniteSubgroup, beta: Bicharacter) -> GroupElement:
    rad = radical(beta)
    if rad.order != 2:
        raise DivisionError("rad beta must have order 2")
    f = next(x for x in rad.elements if not x.is_identity)
    return f.g if isinstance(f, GSharpElement) else f


@dataclass(frozen=True, eq=False)
class MStar(GradingParams):
    T: FiniteSubgroup
    beta: Bicharacter
    kappa0: KappaMap
    kappa1: KappaMap
    g0: GSharpElement
    family = "m-star"

    @property
    def group(self):
        return self.T.parent

    def key(self):
        return (self.family, subgroup_key(self.T), bichar_key(self.beta), self.g0.key(), _kkey(self.kappa0),
                _kkey(self.kappa1))

    def inertia(self) -> InertiaQuadruple:
        Ts = to_sharp(self.T)
        if self.T.order == 1:
            eta = EtaMap(Ts, {Ts.identity: 1})
        else:
            eta = transpose_eta(self.T, self.beta)
        return InertiaQuadruple(eta, self.kappa0, self.kappa1, self.g0, 1)

    def beta_tilde(self) -> Bicharacter:
        return sharp_bicharacter(self.beta, to_sharp(self.T))

    def validate(self):
        if not self.T.is_elementary_2():
            raise DivisionError("T must be an elementary 2-group")
        if self.T.order > 1:
            _check_alt_nondeg(self.beta, "beta")
        _check_kappa_on(self.kappa0, self.T, "kappa0")
        _check_kappa_on(self.kappa1, self.T, "kappa1")
        check_admissible(to_sharp(self.T), self.beta_tilde(), self.inertia()).raise_if_bad()

    def transform(self, g, branch="id"):
        return replace(self, kappa0=self.kappa0.shift(g), kappa1=self.kappa1.shift(g),
                       g0=self.g0 - GSharpElement(2 * g, 0))

    def support_cosets(self):
        return self.kappa0.support() + self.kappa1.support()

    def shift_lattice(self):
        return list(self.T.elements)

    def shape(self):
        r = isqrt(self.T.order)
        return (self.kappa0.total * r, self.kappa1.total * r)

    def assoc_dim(self):
        m, n = self.shape()
        return (m + n) ** 2

    def build(self):
        return build_M_star(self.T, self.beta, self.kappa0, self.kappa1, self.g0)


@dataclass(frozen=True, eq=False)
class MexEven(GradingParams):
    T: FiniteSubgroup
    beta: Bicharacter
    kappa0: KappaMap
    kappa1: KappaMap
    g0: GSharpElement
    family = "mex-even"

    @property
    def group(self):
        return self.T.parent

    @property
    def f(self) -> GroupElement:
        return _f_of(self.T, self.beta)

    def key(self):
        return (self.family, subgroup_key(self.T), bichar_key(self.beta), self.g0.key(), _kkey(self.kappa0),
                _kkey(self.kappa1))

    def division(self):
        Ts = to_sharp(self.T)
        return build_exchange_division(ExchangeDivisionSpec(Ts, sharp_bicharacter(self.beta, Ts), Ts.identity))

    def inertia(self) -> InertiaQuadruple:
        return InertiaQuadruple(self.division().eta, self.kappa0, self.kappa1, self.g0, 1)

    def validate(self):
        _check_kappa_on(self.kappa0, self.T, "kappa0")
        _check_kappa_on(self.kappa1, self.T, "kappa1")
        D = self.division()
        check_admissible(D.T, D.beta_tilde(), self.inertia()).raise_if_bad()

    def branches(self):
        return ("i", "ii")

    def transform(self, g, branch="i"):
        if branch in ("i", "id"):
            return replace(self, kappa0=self.kappa0.shift(g), kappa1=self.kappa1.shift(g),
                           g0=self.g0 - GSharpElement(2 * g, 0))
        return replace(self, kappa0=self.kappa1.shift(g), kappa1=self.kappa0.shift(g),
                       g0=self.g0 + GSharpElement(self.f - 2 * g, 0))

    def support_cosets(self):
        return self.kappa0.support() + self.kappa1.support()

    def shift_lattice(self):
        return list(self.T.elements)

    def shape(self):
        r = isqrt(self.T.order // 2)
        return (self.kappa0.total * r, self.kappa1.total * r)

    def assoc_dim(self):
        m, n = self.shape()
        return 2 * (m + n) ** 2

    def build(self):
        return build_Mex_even(self.T, self.beta, self.kappa0, self.kappa1, self.g0)


@dataclass(frozen=True, eq=False)
class MexOdd(GradingParams):
    T: FiniteSubgroup  # in G#
    beta_tilde: Bicharacter
    t_p: GSharpElement
    kappa: KappaMap
    g0: GroupElement
    family = "mex-odd"

    @property
    def group(self):
        return self.T.parent.base

    @property
    def Tplus(self):
        return self.T.even_part().project_to_base()

    @property
    def f(self) -> GroupElement:
        return _f_of(self.T, self.beta_tilde)

    def key(self):
        return (self.family, subgroup_key(self.T), bichar_key(self.beta_tilde), self.t_p.key(), self.g0.key(),
                _kkey(self.kappa))

    def division(self):
        return build_exchange_division(ExchangeDivisionSpec(self.T, self.beta_tilde, self.t_p))

    def inertia(self) -> InertiaQuadruple:
        return InertiaQuadruple(self.division().eta, self.kappa, None, GSharpElement(self.g0, 0), 1)

    def validate(self):
        if self.t_p.parity or self.t_p.is_identity:
            raise DivisionError("t_p must be a nontrivial even parity element")
        _check_kappa_on(self.kappa, self.Tplus, "kappa")
        D = self.division()
        check_admissible(D.T, D.beta_tilde(), self.inertia()).raise_if_bad()

    def transform(self, g, branch="id"):
        return replace(self, kappa=self.kappa.shift(g), g0=self.g0 - 2 * g)

    def support_cosets(self):
        return self.kappa.support()

    def shift_lattice(self):
        return list(self.Tplus.elements)

    def shape(self):
        n = self.kappa.total * isqrt(self.T.order // 8)
        return (n, n)

    def assoc_dim(self):
        return 2 * (2 * self.shape()[0]) ** 2

    def build(self):
        return build_Mex_odd(self.T, self.beta_tilde, self.t_p, self.kappa, self.g0)


@dataclass(frozen=True, eq=False)
class QexPlus(GradingParams):
    Tplus: FiniteSubgroup
    beta_plus: Bicharacter
    h: GroupElement
    kappa: KappaMap
    g0: GroupElement
    family = "qex"

    @property
    def group(self):
        return self.Tplus.parent

    @property
    def f(self) -> GroupElement:
        return _f_of(self.Tplus, self.beta_plus)

    def key(self):
        return (self.family, subgroup_key(self.Tplus), bichar_key(self.beta_plus), self.h.key(), self.g0.key(),
                _kkey(self.kappa))

    def division(self):
        return build_qex_division(self.Tplus, self.beta_plus, self.h)

    def inertia(self) -> InertiaQuadruple:
        return InertiaQuadruple(self.division().eta, self.kappa, None, GSharpElement(self.g0, 0), 1)

    def validate(self):
        _check_kappa_on(self.kappa, self.Tplus, "kappa")
        D = self.division()
        check_admissible(D.T, D.beta_tilde(), self.inertia()).raise_if_bad()

    def transform(self, g, branch="id"):
        return replace(self, kappa=self.kappa.shift(g), g0=self.g0 - 2 * g)

    def support_cosets(self):
        return self.kappa.support()

    def shift_lattice(self):
        return list(self.Tplus.elements)

    def shape(self):
        n = self.kappa.total * isqrt(self.Tplus.order // 2)
        return (n, n)

    def assoc_dim(self):
        return 2 * 2 * self.shape()[0] ** 2

    def build(self):
        return build_Qex(self.Tplus, self.beta_plus, self.h, self.kappa, self.g0)


def _invert_inner(p: GradingParams) -> GradingParams:
    """(beta, kappa) -> (beta^{-1}, kappa*)."""
    if isinstance(p, MEven):
        return replace(p, beta=p.beta.inverse(), kappa0=p.kappa0.star(), kappa1=p.kappa1.star())
    if isinstance(p, MOdd):
        return replace(p, beta_tilde=p.beta_tilde.inverse(), kappa=p.kappa.star())
    if isinstance(p, Qgr):
        return replace(p, beta_plus=p.beta_plus.inverse(), kappa=p.kappa.star())
    raise TypeError("type I pairs wrap m-even, m-odd or q parameters")


@dataclass(frozen=True, eq=False)
class TypeIPair(GradingParams):
    """S x S^sop with the exchange superinvolution, S graded by ``inner``."""

    inner: GradingParams
    family = "type-i"

    @property
    def group(self):
        return self.inner.group

    def key(self):
        return (self.family,) + self.inner.key()

    def validate(self):
        if not isinstance(self.inner, (MEven, MOdd, Qgr)):
            raise TypeError("type I pairs wrap m-even, m-odd or q parameters")
        self.inner.validate()

    def branches(self):
        inner = self.inner.branches()
        return tuple(inner) + tuple("inv-" + b for b in inner)

    def transform(self, g, branch="id"):
        p = self.inner
        if branch.startswith("inv-"):
            p = _invert_inner(p)
            branch = branch[4:]
        return TypeIPair(p.transform(g, branch))

    def support_cosets(self):
        return self.inner.support_cosets()

    def shape(self):
        return self.inner.shape()

    def assoc_dim(self):
        return 2 * self.inner.assoc_dim()

    def build(self):
        from .forms import build_exchange_pair

        return build_exchange_pair(self.inner.build())


FAMILIES = {
    "m-even": MEven,
    "m-odd": MOdd,
    "q": Qgr,
    "m-star": MStar,
    "mex-even": MexEven,
    "mex-odd": MexOdd,
    "qex": QexPlus,
    "type-i": TypeIPair,
}


# -- the action of T x G# on inertia quadruples -------------------------------------


def act_T_Gsharp(t: GSharpElement, g: GSharpElement, q: InertiaQuadruple, beta_tilde: Bicharacter) -> InertiaQuadruple:
    """(t, g) . (eta, kappa, g0, delta): first g, then t.

    t: (beta~(t, .) eta, kappa, t g0, (-1)^{|t|} eta(t) delta)
    g: (eta, g . kappa, g0 g^{-2}, (-1)^{|g|} delta)
    """
    T = q.T
    if t not in T:
        raise ValueError("t must lie in the support T")
    if q.kappa1 is not None:
        k0, k1 = shift_kappa_pair(q.kappa0, q.kappa1, g)
    else:
        k0, k1 = q.kappa0.shift(_even_rep(T, g).g), None
    g0 = q.g0 - 2 * g
    delta = q.delta * (-1 if g.parity else 1)
    eta = q.eta.twist(beta_tilde, t)
    ev = q.eta(t)
    delta = delta * (-1 if t.parity else 1) * int(ev)
    return InertiaQuadruple(eta, k0, k1, t + g0, delta)


# -- decisions ------------------------------------------------------------------


def _same(a: FiniteSubgroup, b: FiniteSubgroup) -> bool:
    return a == b


def iso_M_even(p: MEven, q: MEven) -> IsoResult:
    if not (_same(p.T, q.T) and p.beta == q.beta):
        return IsoResult(False)
    for branch, src in (("shift", [p.kappa0, p.kappa1]), ("swap", [p.kappa1, p.kappa0])):
        dst = [q.kappa0, q.kappa1]
        if [k.total for k in src] != [k.total for k in dst]:
            continue
        for g in _shift_candidates(src, dst):
            if src[0].shift(g) == dst[0] and src[1].shift(g) == dst[1]:
                return IsoResult(True, g, branch)
    return IsoResult(False)


def _iso_single_kappa(p, q) -> IsoResult:
    if p.kappa.total != q.kappa.total:
        return IsoResult(False)
    for g in _shift_candidates([p.kappa], [q.kappa]):
        if p.kappa.shift(g) == q.kappa:
            return IsoResult(True, g, "shift")
    return IsoResult(False)


def iso_M_odd(p: MOdd, q: MOdd) -> IsoResult:
    if not (_same(p.T, q.T) and p.beta_tilde == q.beta_tilde):
        return IsoResult(False)
    return _iso_single_kappa(p, q)


def iso_Q(p: Qgr, q: Qgr) -> IsoResult:
    if not (_same(p.Tplus, q.Tplus) and p.beta_plus == q.beta_plus and p.h == q.h):
        return IsoResult(False)
    return _iso_single_kappa(p, q)


def _double_witness(G: FinAbGroup, m: GroupElement, check) -> GroupElement | None:
    for g in sorted(solve_double(G, m), key=lambda x: x.key()):
        if check(g):
            return g
    return None


def iso_MStar(p: MStar, q: MStar) -> IsoResult:
    if not (_same(p.T, q.T) and p.beta == q.beta) or p.g0.parity != q.g0.parity:
        return IsoResult(False)
    g = _double_witness(p.group, p.g0.g - q.g0.g,
                        lambda g: p.kappa0.shift(g) == q.kappa0 and p.kappa1.shift(g) == q.kappa1)
    return IsoResult(True, g, "shift") if g is not None else IsoResult(False)


def iso_Mex_even(p: MexEven, q: MexEven) -> IsoResult:
    if not (_same(p.T, q.T) and p.beta == q.beta) or p.g0.parity != q.g0.parity:
        return IsoResult(False)
    g = _double_witness(p.group, p.g0.g - q.g0.g,
                        lambda g: p.kappa0.shift(g) == q.kappa0 and p.kappa1.shift(g) == q.kappa1)
    if g is not None:
        return IsoResult(True, g, "i")
    g = _double_witness(p.group, p.f + p.g0.g - q.g0.g,
                        lambda g: p.kappa1.shift(g) == q.kappa0 and p.kappa0.shift(g) == q.kappa1)
    if g is not None:
        return IsoResult(True, g, "ii")
    return IsoResult(False)


def iso_Mex_odd(p: MexOdd, q: MexOdd) -> IsoResult:
    if not (_same(p.T, q.T) and p.beta_tilde == q.beta_tilde and p.t_p == q.t_p):
        return IsoResult(False)
    g = _double_witness(p.group, p.g0 - q.g0, lambda g: p.kappa.shift(g) == q.kappa)
    return IsoResult(True, g, "shift") if g is not None else IsoResult(False)


def iso_Qex(p: QexPlus, q: QexPlus) -> IsoResult:
    if not (_same(p.Tplus, q.Tplus) and p.beta_plus == q.beta_plus and p.h == q.h):
        return IsoResult(False)
    g = _double_witness(p.group, p.g0 - q.g0, lambda g: p.kappa.shift(g) == q.kappa)
    return IsoResult(True, g, "shift") if g is not None else IsoResult(False)


_INNER = {MEven: iso_M_even, MOdd: iso_M_odd, Qgr: iso_Q}


def iso_typeI(p: TypeIPair, q: TypeIPair) -> IsoResult:
    """Same inner family; beta or beta^{-1} combined with kappa or kappa*, plus the inner branches."""
    if type(p.inner) is not type(q.inner) or type(p.inner) not in _INNER:
        return IsoResult(False)
    decide = _INNER[type(p.inner)]
    res = decide(p.inner, q.inner)
    if res:
        return res
    res = decide(_invert_inner(p.inner), q.inner)
    if res:
        return IsoResult(True, res.witness, "inv-" + res.branch)
    return IsoResult(False)


_DECIDERS = {
    MEven: iso_M_even,
    MOdd: iso_M_odd,
    Qgr: iso_Q,
    MStar: iso_MStar,
    MexEven: iso_Mex_even,
    MexOdd: iso_Mex_odd,
    QexPlus: iso_Qex,
    TypeIPair: iso_typeI,
}


def is_isomorphic(p: GradingParams, q: GradingParams) -> IsoResult:
    if type(p) is not type(q) or p.group != q.group:
        return IsoResult(False)
    return _DECIDERS[type(p)](p, q)


# -- canonical forms ------------------------------------------------------------------


def canonicalize(p: GradingParams) -> GradingParams:
    """Minimal-key element of the finite, orbit-invariant set of transforms that
    move some support coset of kappa onto the identity coset."""
    best = None
    best_key = None
    for b in p.branches():
        base = p.transform(p.group.identity, b)
        for c in base.support_cosets():
            for s in base.shift_lattice():
                cand = p.transform(s - c.rep, b)
                k = cand.key()
                if best_key is None or k < best_key:
                    best, best_key = cand, k
    return best if best is not None else p


# -- census -------------------------------------------------------------------------


MAX_CENSUS = 20000


def _subgroups(parent, elements) -> list[FiniteSubgroup]:
    found = {FiniteSubgroup(parent, [])}
    frontier = list(found)
    while frontier:
        nxt = []
        for H in frontier:
            for x in elements:
                if x in H:
                    continue
                K = FiniteSubgroup(parent, list(H.generators) + [x])
                if K not in found:
                    found.add(K)
                    nxt.append(K)
        frontier = nxt
    return sorted(found, key=lambda H: (H.order, subgroup_key(H)))


def _alternating_bicharacters(T: FiniteSubgroup) -> list[Bicharacter]:
    gens = T.invariant_basis()
    r = len(gens)
    orders = [g.order() for g in gens]
    pairs = [(i, j) for i in range(r) for j in range(i + 1, r)]
    out = []
    N = T.exponent if T.order > 1 else 1
    for exps in itertools.product(*[range(gcd(orders[i], orders[j])) for i, j in pairs]):
        vals = [[0] * r for _ in range(r)]
        for (i, j), e in zip(pairs, exps):
            d = gcd(orders[i], orders[j])
            vals[i][j] = e * (N // d)
            vals[j][i] = -e * (N // d)
        table = {}
        words = _coords(T, gens)
        for t in T.elements:
            for s in T.elements:
                a, b = words[t], words[s]
                table[(t, s)] = sum(a[i] * b[j] * vals[i][j] for i in range(r) for j in range(r))
        out.append(Bicharacter(T, table, N))
    return out


def _coords(T: FiniteSubgroup, gens: list) -> dict:
    words = {}
    for exps in itertools.product(*[range(g.order()) for g in gens]):
        x = T.identity
        for e, g in zip(exps, gens):
            x = x + e * g
        words[x] = exps
    return words


def _kappas(H: FiniteSubgroup, G: FinAbGroup, k: int) -> list[KappaMap]:
    cosets = H.coset_space(G.elements())
    if k == 0:
        return [KappaMap(H, [])]
    return [KappaMap(H, [(c, 1) for c in combo]) for combo in itertools.combinations_with_replacement(cosets, k)]


def _k_for(dim_of, dim: int) -> int | None:
    for k in range(1, dim + 1):
        d = dim_of(k)
        if d == dim:
            return k
        if d > dim:
            break
    return None


def enumerate_raw(family: str, G: FinAbGroup, dim: int, shape: tuple[int, int] | None = None) -> list[GradingParams]:
    """All admissible parameter records of the family for algebras of dimension ``dim``."""
    if not G.is_finite:
        raise CensusError("a census needs a finite grading group")
    if family not in FAMILIES:
        raise CensusError(f"unknown family {family!r}")
    out: list[GradingParams] = []
    S = G.sharp

    def push(p):
        try:
            p.validate()
        except (ValueError, DivisionError):
            return
        if p.assoc_dim() != dim:
            return
        if shape is not None and p.shape() not in (shape, shape[::-1]):
            return
        out.append(p)
        if len(out) > MAX_CENSUS:
            raise CensusError("census too large; lower the dimension or the group")

    sub_G = _subgroups(G, G.elements())
    if family in ("m-even", "m-star", "mex-even", "type-i"):
        for T in sub_G:
            if family == "m-star" and not T.is_elementary_2():
                continue
            if family == "mex-even" and not (T.is_elementary_2() and T.order >= 2):
                continue
            bichars = _alternating_bicharacters(T)
            for beta in bichars:
                rad = radical(beta).order
                if family == "mex-even":
                    if rad != 2:
                        continue
                    r2 = T.order // 2
                elif rad != 1:
                    continue
                else:
                    r2 = T.order
                r = isqrt(r2)
                if r * r != r2:
                    continue
                side = isqrt(dim // (2 if family in ("mex-even", "type-i") else 1))
                if side * side * (2 if family in ("mex-even", "type-i") else 1) != dim or side % r:
                    continue
                ktot = side // r
                for k0 in range(ktot + 1):
                    for kap0 in _kappas(T, G, k0):
                        for kap1 in _kappas(T, G, ktot - k0):
                            if family == "m-even":
                                push(MEven(T, beta, kap0, kap1))
                            elif family == "type-i":
                                push(TypeIPair(MEven(T, beta, kap0, kap1)))
                            else:
                                cls = MStar if family == "m-star" else MexEven
                                for g0 in S.elements():
                                    push(cls(T, beta, kap0, kap1, g0))
    if family in ("m-odd", "mex-odd", "type-i"):
        for T in _subgroups(S, S.elements()):
            if T.is_even():
                continue
            p = ParityMap(T)
            Tplus = T.even_part().project_to_base()
            for beta in _alternating_bicharacters(T):
                bt = beta.twisted(p)
                if family == "mex-odd":
                    rad = radical(bt)
                    if rad.order != 2:
                        continue
                    for tp in T.elements:
                        if tp.parity or tp.is_identity:
                            continue
                        k = _k_for(lambda k: 8 * k * k * (T.order // 8), dim)
                        for kap in _kappas(Tplus, G, k) if k else []:
                            for g0 in G.elements():
                                push(MexOdd(T, bt, tp, kap, g0))
                else:
                    if radical(beta).order != 1:
                        continue
                    mult = 2 if family == "type-i" else 1
                    k = _k_for(lambda k: mult * k * k * T.order, dim)
                    for kap in _kappas(Tplus, G, k) if k else []:
                        rec = MOdd(T, bt, kap)
                        push(TypeIPair(rec) if family == "type-i" else rec)
    if family in ("q", "qex", "type-i"):
        for Tp in sub_G:
            if family == "qex" and not (Tp.is_elementary_2() and Tp.order >= 2):
                continue
            for bp in _alternating_bicharacters(Tp):
                for h in G.elements():
                    if family == "qex":
                        k = _k_for(lambda k: 2 * k * k * Tp.order, dim)
                    else:
                        k = _k_for(lambda k: (4 if family == "type-i" else 2) * k * k * Tp.order, dim)
                    for kap in _kappas(Tp, G, k) if k else []:
                        if family == "qex":
                            for g0 in G.elements():
                                push(QexPlus(Tp, bp, h, kap, g0))
                        else:
                            rec = Qgr(Tp, bp, h, kap)
                            push(TypeIPair(rec) if family == "type-i" else rec)
    return out


def enumerate_census(family: str, G: FinAbGroup, dim: int, shape: tuple[int, int] | None = None) -> list[GradingParams]:
    """Canonical representatives of the isomorphism classes, sorted by key."""
    seen = {}
    for p in enumerate_raw(family, G, dim, shape):
        c = canonicalize(p)
        seen.setdefault(c.key(), c)
    return [seen[k] for k in sorted(seen)]
