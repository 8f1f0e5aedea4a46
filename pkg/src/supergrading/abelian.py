"""Finitely generated abelian groups, finite subgroups, cosets and bicharacters.

Groups are explicit products of cyclic factors; an order of 0 stands for an
infinite cyclic factor.  Group law is written additively in code (``a + b``,
``-a``, ``k * a``) even though the algebra literature writes it
multiplicatively.  The super-grading group ``G# = G x Z2`` has its own element
type :class:`GSharpElement`.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from functools import cached_property, reduce
from math import gcd, isqrt
from typing import Iterable, Iterator

from .cyclo import Cyclo, root_of_unity

__all__ = [
    "FinAbGroup",
    "GroupElement",
    "SharpGroup",
    "GSharpElement",
    "FiniteSubgroup",
    "Coset",
    "Bicharacter",
    "ParityMap",
    "GroupError",
    "compose",
    "solve_double",
    "radical",
    "parity_elements",
    "duality_decomposition",
    "parse_group",
]


class GroupError(ValueError):
    """Raised on inconsistent group data (parent mismatch, bad presentation...)."""


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b) if a and b else 0


@dataclass(frozen=True)
class FinAbGroup:
    """Z_{n_1} x ... x Z_{n_r}; an order of 0 encodes a factor Z."""

    cyclic_orders: tuple[int, ...]

    def __post_init__(self):
        orders = tuple(int(n) for n in self.cyclic_orders)
        if any(n < 0 for n in orders):
            raise GroupError("cyclic orders must be non-negative")
        object.__setattr__(self, "cyclic_orders", orders)

    @property
    def rank(self) -> int:
        return len(self.cyclic_orders)

    @property
    def is_finite(self) -> bool:
        return all(n > 0 for n in self.cyclic_orders)

    @property
    def order(self) -> int:
        if not self.is_finite:
            raise GroupError("infinite group has no finite order")
        return reduce(lambda a, b: a * b, self.cyclic_orders, 1)

    def reduce_coords(self, coords: Iterable[int]) -> tuple[int, ...]:
        coords = tuple(int(c) for c in coords)
        if len(coords) != self.rank:
            raise GroupError(f"expected {self.rank} coordinates, got {len(coords)}")
        return tuple(c % n if n else c for c, n in zip(coords, self.cyclic_orders))

    def element(self, *coords) -> "GroupElement":
        if len(coords) == 1 and not isinstance(coords[0], int):
            coords = tuple(coords[0])
        return GroupElement(self, self.reduce_coords(coords))

    @cached_property
    def identity(self) -> "GroupElement":
        return GroupElement(self, (0,) * self.rank)

    def generators(self) -> list["GroupElement"]:
        out = []
        for i in range(self.rank):
            v = [0] * self.rank
            v[i] = 1
            out.append(self.element(v))
        return out

    def elements(self) -> list["GroupElement"]:
        if not self.is_finite:
            raise GroupError("cannot enumerate an infinite group")
        return [GroupElement(self, c) for c in itertools.product(*(range(n) for n in self.cyclic_orders))]

    @cached_property
    def sharp(self) -> "SharpGroup":
        return SharpGroup(self)

    def __str__(self):
        if not self.cyclic_orders:
            return "1"
        return " x ".join(f"Z{n}" if n else "Z" for n in self.cyclic_orders)


def parse_group(text: str) -> FinAbGroup:
    """Parse ``"Z2 x Z4 x Z"``; ``"1"`` denotes the trivial group."""
    if not isinstance(text, str):
        raise GroupError(f"group spec must be text, got {text!r}")
    s = text.strip()
    if s in ("1", "trivial", ""):
        return FinAbGroup(())
    orders = []
    for part in re.split(r"\s*[x×]\s*", s):
        m = re.fullmatch(r"Z(?:_?(\d+))?", part.strip())
        if not m:
            raise GroupError(f"bad cyclic factor {part!r} in group spec {text!r}")
        n = int(m.group(1)) if m.group(1) is not None else 0
        if m.group(1) is not None and n < 1:
            raise GroupError(f"cyclic order must be positive in {text!r}")
        orders.append(n)
    return FinAbGroup(tuple(orders))


@dataclass(frozen=True)
class GroupElement:
    """Element of a FinAbGroup in reduced coordinates."""

    group: FinAbGroup = field(repr=False)
    coords: tuple[int, ...]

    def _check(self, other: "GroupElement"):
        if not isinstance(other, GroupElement) or other.group != self.group:
            raise GroupError("elements belong to different groups")

    def __add__(self, other: "GroupElement") -> "GroupElement":
        self._check(other)
        return GroupElement(self.group, self.group.reduce_coords(a + b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "GroupElement":
        return GroupElement(self.group, self.group.reduce_coords(-a for a in self.coords))

    def __sub__(self, other: "GroupElement") -> "GroupElement":
        return self + (-other)

    def __rmul__(self, k: int) -> "GroupElement":
        return GroupElement(self.group, self.group.reduce_coords(k * a for a in self.coords))

    @property
    def parent(self) -> FinAbGroup:
        return self.group

    @property
    def is_identity(self) -> bool:
        return not any(self.coords)

    def order(self) -> int:
        """Order of the element; 0 if infinite."""
        out = 1
        for c, n in zip(self.coords, self.group.cyclic_orders):
            if n == 0:
                if c:
                    return 0
                continue
            out = _lcm(out, n // gcd(n, c)) if c else out
        return out

    def key(self) -> tuple:
        return self.coords

    def __lt__(self, other):
        return self.key() < other.key()

    def __str__(self):
        return "(" + ",".join(str(c) for c in self.coords) + ")"

    __repr__ = __str__


def compose(a: GroupElement, b: GroupElement) -> GroupElement:
    """Group operation; raises GroupError on parent mismatch."""
    return a + b


@dataclass(frozen=True)
class SharpGroup:
    """G# = G x Z2."""

    base: FinAbGroup

    @property
    def is_finite(self) -> bool:
        return self.base.is_finite

    @property
    def order(self) -> int:
        return 2 * self.base.order

    def element(self, g, parity: int = 0) -> "GSharpElement":
        if not isinstance(g, GroupElement):
            g = self.base.element(g)
        return GSharpElement(g, parity % 2)

    @cached_property
    def identity(self) -> "GSharpElement":
        return GSharpElement(self.base.identity, 0)

    @cached_property
    def odd_unit(self) -> "GSharpElement":
        return GSharpElement(self.base.identity, 1)

    def elements(self) -> list["GSharpElement"]:
        return [GSharpElement(g, p) for g in self.base.elements() for p in (0, 1)]

    def __str__(self):
        return f"({self.base}) x Z2#"


@dataclass(frozen=True)
class GSharpElement:
    """Element (g, parity) of G#."""

    g: GroupElement
    parity: int

    def __post_init__(self):
        if self.parity not in (0, 1):
            raise GroupError("parity must be 0 or 1")

    @property
    def parent(self) -> SharpGroup:
        return self.g.group.sharp

    def __add__(self, other: "GSharpElement") -> "GSharpElement":
        if not isinstance(other, GSharpElement):
            raise GroupError("cannot combine G# element with a G element")
        return GSharpElement(self.g + other.g, (self.parity + other.parity) % 2)

    def __neg__(self):
        return GSharpElement(-self.g, self.parity)

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, k: int):
        return GSharpElement(k * self.g, (k * self.parity) % 2)

    @property
    def is_identity(self) -> bool:
        return self.parity == 0 and self.g.is_identity

    def order(self) -> int:
        o = self.g.order()
        if o == 0:
            return 0
        return _lcm(o, 2) if self.parity else o

    @property
    def coords(self) -> tuple[int, ...]:
        return self.g.coords + (self.parity,)

    def key(self) -> tuple:
        return self.coords

    def __lt__(self, other):
        return self.key() < other.key()

    def __str__(self):
        return "(" + ",".join(str(c) for c in self.g.coords) + f"|{self.parity})"

    __repr__ = __str__


def even(g: GroupElement) -> GSharpElement:
    return GSharpElement(g, 0)


class FiniteSubgroup:
    """Finite subgroup generated by explicit elements; elements enumerated eagerly."""

    def __init__(self, parent, generators: Iterable = ()):
        self.parent = parent
        gens = [g for g in generators]
        for g in gens:
            if g.parent != parent:
                raise GroupError("generator does not belong to the ambient group")
        ident = parent.identity
        seen = {ident}
        frontier = [ident]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = x + g
                    if y not in seen:
                        if len(seen) > 4096:
                            raise GroupError("subgroup too large or infinite")
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        self.generators = tuple(gens)
        self.elements = tuple(sorted(seen, key=lambda e: e.key()))
        self.index = {e: i for i, e in enumerate(self.elements)}
        self._set = frozenset(seen)

    @classmethod
    def trivial(cls, parent) -> "FiniteSubgroup":
        return cls(parent, ())

    @property
    def identity(self):
        return self.parent.identity

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def __iter__(self) -> Iterator:
        return iter(self.elements)

    def __contains__(self, x) -> bool:
        return x in self._set

    def __eq__(self, other):
        return isinstance(other, FiniteSubgroup) and self.parent == other.parent and self._set == other._set

    def __hash__(self):
        return hash(self._set)

    def __repr__(self):
        return "FiniteSubgroup{" + ", ".join(str(e) for e in self.elements) + "}"

    def is_subgroup_of(self, other: "FiniteSubgroup") -> bool:
        return self._set <= other._set

    @cached_property
    def exponent(self) -> int:
        return reduce(_lcm, (e.order() for e in self.elements), 1)

    def is_elementary_2(self) -> bool:
        return all((2 * e).is_identity for e in self.elements)

    def sub(self, generators) -> "FiniteSubgroup":
        return FiniteSubgroup(self.parent, generators)

    def even_part(self) -> "FiniteSubgroup":
        """T+ for a subgroup of G#; the subgroup itself otherwise."""
        if not isinstance(self.parent, SharpGroup):
            return self
        evens = [e for e in self.elements if e.parity == 0]
        return FiniteSubgroup(self.parent, self.invariant_basis_of(evens))

    def is_even(self) -> bool:
        return not isinstance(self.parent, SharpGroup) or all(e.parity == 0 for e in self.elements)

    def project_to_base(self) -> "FiniteSubgroup":
        """Image in G of a subgroup of G#."""
        if not isinstance(self.parent, SharpGroup):
            return self
        return FiniteSubgroup(self.parent.base, [e.g for e in self.generators])

    def invariant_basis_of(self, elements) -> list:
        sub = FiniteSubgroup(self.parent, elements) if not isinstance(elements, FiniteSubgroup) else elements
        return sub.invariant_basis()

    def invariant_basis(self) -> list:
        """Elements x_1..x_r with T the internal direct sum of the <x_i>.

        Repeatedly splits off a cyclic subgroup of maximal order; a subgroup
        maximal among those meeting it trivially is a complement.
        """
        basis = []
        current = self
        while current.order > 1:
            top = max(e.order() for e in current.elements)
            x = next(e for e in sorted(current.elements, key=_candidate_key) if e.order() == top)
            cyc = FiniteSubgroup(self.parent, [x])
            comp_gens: list = []
            comp = FiniteSubgroup(self.parent, [])
            for y in sorted(current.elements, key=_candidate_key):
                if y in comp:
                    continue
                trial = FiniteSubgroup(self.parent, comp_gens + [y])
                if all(z.is_identity or z not in cyc for z in trial.elements):
                    comp_gens.append(y)
                    comp = trial
            if comp.order * cyc.order != current.order:
                raise GroupError("internal error: complement search failed")
            basis.append(x)
            current = comp
        return basis

    def coset(self, rep) -> "Coset":
        return Coset(rep, self)

    def coset_space(self, ambient_elements) -> list["Coset"]:
        seen = {}
        for g in ambient_elements:
            c = Coset(g, self)
            seen.setdefault(c, None)
        return sorted(seen, key=lambda c: c.key())


def _candidate_key(e):
    """Prefer coordinate vectors with few nonzero entries, earlier factors first."""
    coords = e.key()
    return (sum(1 for c in coords if c), tuple(-1 if c else 0 for c in coords), coords)


class Coset:
    """Coset rep + T with canonical (lexicographically minimal) representative."""

    __slots__ = ("rep", "subgroup")

    def __init__(self, rep, subgroup: FiniteSubgroup):
        if rep.parent != subgroup.parent:
            # allow G elements for subgroups of G#, and vice versa only when even
            if isinstance(subgroup.parent, SharpGroup) and isinstance(rep, GroupElement):
                rep = GSharpElement(rep, 0)
            else:
                raise GroupError("coset representative outside the ambient group")
        self.rep = min((rep + t for t in subgroup.elements), key=lambda e: e.key())
        self.subgroup = subgroup

    def key(self):
        return self.rep.key()

    def __eq__(self, other):
        return isinstance(other, Coset) and self.rep == other.rep and self.subgroup == other.subgroup

    def __hash__(self):
        return hash(self.rep)

    def __lt__(self, other):
        return self.key() < other.key()

    def __contains__(self, g) -> bool:
        return (g - self.rep) in self.subgroup

    def __add__(self, other):
        if isinstance(other, Coset):
            return Coset(self.rep + other.rep, self.subgroup)
        return Coset(self.rep + other, self.subgroup)

    def __neg__(self):
        return Coset(-self.rep, self.subgroup)

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, k: int):
        return Coset(k * self.rep, self.subgroup)

    def members(self):
        return sorted((self.rep + t for t in self.subgroup.elements), key=lambda e: e.key())

    def is_subgroup_coset(self) -> bool:
        return self.rep in self.subgroup

    def __repr__(self):
        return f"Coset({self.rep})"

    def __str__(self):
        return str(self.rep)


class Bicharacter:
    """Bicharacter T x T -> roots of unity, stored as exponents of zeta_N, N = exp(T)."""

    def __init__(self, T: FiniteSubgroup, table: dict, order: int | None = None):
        N = T.exponent
        if order is not None and order != N:
            if order % N == 0:
                table = {k: v // (order // N) if v % (order // N) == 0 else None for k, v in table.items()}
                if any(v is None for v in table.values()):
                    raise GroupError("bicharacter values are not N-th roots of unity for N = exp(T)")
            elif N % order == 0:
                table = {k: v * (N // order) for k, v in table.items()}
            else:
                raise GroupError("incompatible root-of-unity order")
        self.T = T
        self.N = N
        self.table = {}
        for t in T.elements:
            for s in T.elements:
                self.table[(t, s)] = table[(t, s)] % N

    @classmethod
    def from_function(cls, T: FiniteSubgroup, f, order: int | None = None) -> "Bicharacter":
        """f(t, s) -> integer exponent of zeta_order (default order exp(T))."""
        order = order or T.exponent
        return cls(T, {(t, s): f(t, s) for t in T.elements for s in T.elements}, order)

    @classmethod
    def trivial(cls, T: FiniteSubgroup) -> "Bicharacter":
        return cls.from_function(T, lambda t, s: 0)

    @classmethod
    def from_generator_values(cls, T: FiniteSubgroup, gens: list, values) -> "Bicharacter":
        """Extend values on generator pairs bimultiplicatively; values are Cyclo or ints +-1.

        Raises GroupError when the table is inconsistent with the relations of T.
        """
        N = T.exponent
        exps = [[None] * len(gens) for _ in gens]
        for i in range(len(gens)):
            for j in range(len(gens)):
                v = values[i][j]
                if not isinstance(v, Cyclo):
                    v = Cyclo.rational(v)
                k = v.root_exponent(N)
                if k is None:
                    raise GroupError(f"bicharacter value {v} is not an N-th root of unity with N = {N}")
                exps[i][j] = k
        words = _words(T, gens)
        table = {}
        for t in T.elements:
            for s in T.elements:
                a, b = words[t], words[s]
                table[(t, s)] = sum(a[i] * b[j] * exps[i][j] for i in range(len(gens)) for j in range(len(gens)))
        bc = cls(T, table)
        if not bc.is_bimultiplicative():
            raise GroupError("generator table does not define a bicharacter on T")
        for i, gi in enumerate(gens):
            for j, gj in enumerate(gens):
                if bc.exponent(gi, gj) != exps[i][j] % N:
                    raise GroupError("generator table does not define a bicharacter on T")
        return bc

    def exponent(self, t, s) -> int:
        return self.table[(t, s)]

    def __call__(self, t, s) -> Cyclo:
        return root_of_unity(self.N, self.table[(t, s)])

    def sign(self, t, s) -> int:
        """Value as +-1; raises if the value is not real."""
        k = self.table[(t, s)]
        if k == 0:
            return 1
        if 2 * k == self.N:
            return -1
        raise GroupError("bicharacter value is not +-1")

    def is_pm_one(self) -> bool:
        return all(2 * k % self.N == 0 for k in self.table.values())

    def is_bimultiplicative(self) -> bool:
        els = self.T.elements
        for t in els:
            for s in els:
                for r in els:
                    if (self.table[(t + s, r)] - self.table[(t, r)] - self.table[(s, r)]) % self.N:
                        return False
                    if (self.table[(r, t + s)] - self.table[(r, t)] - self.table[(r, s)]) % self.N:
                        return False
        return True

    def is_skew_symmetric(self) -> bool:
        return all((self.table[(t, s)] + self.table[(s, t)]) % self.N == 0 for (t, s) in self.table)

    def is_alternating(self) -> bool:
        return all(self.table[(t, t)] == 0 for t in self.T.elements)

    def is_nondegenerate(self) -> bool:
        return radical(self).order == 1

    def inverse(self) -> "Bicharacter":
        return Bicharacter(self.T, {k: -v for k, v in self.table.items()})

    def restrict(self, sub: FiniteSubgroup) -> "Bicharacter":
        return Bicharacter(sub, {(t, s): self.table[(t, s)] for t in sub.elements for s in sub.elements}, self.N)

    def twisted(self, parity: "ParityMap") -> "Bicharacter":
        """(t, s) -> (-1)^{p(t)p(s)} b(t, s); converts between beta and beta-tilde."""
        if self.N % 2 and any(parity(t) for t in self.T.elements):
            raise GroupError("odd exponent with nontrivial parity")
        half = self.N // 2
        return Bicharacter(
            self.T, {(t, s): v + (half if parity(t) and parity(s) else 0) for (t, s), v in self.table.items()}
        )

    def __eq__(self, other):
        if not isinstance(other, Bicharacter) or self.T != other.T:
            return False
        return all(self.table[k] * other.N == other.table[k] * self.N for k in self.table)

    def __hash__(self):
        return hash((self.T, tuple(sorted((a.key(), b.key(), v * 1.0 / self.N) for (a, b), v in self.table.items()))))

    def generator_table(self, gens: list) -> list[list[Cyclo]]:
        return [[self(a, b) for b in gens] for a in gens]

    def __repr__(self):
        return f"Bicharacter(|T|={self.T.order}, N={self.N})"


def _words(T: FiniteSubgroup, gens: list) -> dict:
    """Map each element of T to an exponent vector over gens (BFS, first found)."""
    ident = T.identity
    words = {ident: (0,) * len(gens)}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for i, g in enumerate(gens):
                y = x + g
                if y not in words:
                    w = list(words[x])
                    w[i] += 1
                    words[y] = tuple(w)
                    nxt.append(y)
        frontier = nxt
    if len(words) != T.order:
        raise GroupError("generators do not generate T")
    return words


class ParityMap:
    """Homomorphism p: T -> Z2."""

    def __init__(self, T: FiniteSubgroup, table: dict | None = None):
        self.T = T
        if table is None:
            table = {t: (t.parity if isinstance(t, GSharpElement) else 0) for t in T.elements}
        self.table = {t: table[t] % 2 for t in T.elements}
        for t in T.elements:
            for s in T.elements:
                if self.table[t + s] != (self.table[t] + self.table[s]) % 2:
                    raise GroupError("parity map is not a homomorphism")

    def __call__(self, t) -> int:
        return self.table[t]

    def is_trivial(self) -> bool:
        return not any(self.table.values())


def solve_double(G: FinAbGroup, m: GroupElement) -> set[GroupElement]:
    """All g with 2g = m, solved factor by factor."""
    if m.group != G:
        raise GroupError("target outside the group")
    per_factor = []
    for c, n in zip(m.coords, G.cyclic_orders):
        if n == 0:
            per_factor.append([c // 2] if c % 2 == 0 else [])
        else:
            per_factor.append([a for a in range(n) if (2 * a - c) % n == 0])
    return {G.element(v) for v in itertools.product(*per_factor)}


def radical(b: Bicharacter) -> FiniteSubgroup:
    """{t : b(t, T) = 1}."""
    T = b.T
    rad = [t for t in T.elements if all(b.table[(t, s)] == 0 for s in T.elements)]
    return FiniteSubgroup(T.parent, rad)


def parity_elements(T: FiniteSubgroup, beta_tilde: Bicharacter, p: ParityMap) -> set:
    """All t_p with beta_tilde(t_p, t) = (-1)^{p(t)} for every t in T."""
    N = beta_tilde.N
    out = set()
    for tp in T.elements:
        ok = True
        for t in T.elements:
            k = beta_tilde.table[(tp, t)]
            want = (N // 2) if p(t) else 0
            if p(t) and N % 2:
                ok = False
                break
            if k != want:
                ok = False
                break
        if ok:
            out.add(tp)
    return out


def duality_decomposition(T: FiniteSubgroup, beta: Bicharacter) -> tuple[FiniteSubgroup, FiniteSubgroup, list, list]:
    """T = A x B with beta(A, A) = beta(B, B) = 1 and A, B in duality.

    Returns (A, B, a_gens, b_gens) with beta(a_i, b_j) trivial for i != j and
    beta(a_i, b_i) = exp(2 pi i / ord(a_i)).
    """
    if not beta.is_alternating():
        raise GroupError("bicharacter is not alternating")
    if radical(beta).order != 1:
        raise GroupError("bicharacter is degenerate")
    n = T.order
    if isqrt(n) ** 2 != n:
        raise GroupError("|T| is not a perfect square")
    a_gens, b_gens = [], []
    current = list(T.elements)
    N = beta.N
    while len(current) > 1:
        top = max(e.order() for e in current)
        ordered = sorted(current, key=_candidate_key)
        x = next(e for e in ordered if e.order() == top)
        want = N // top
        y = next(e for e in ordered if beta.table[(x, e)] == want)
        a_gens.append(x)
        b_gens.append(y)
        current = [e for e in current if beta.table[(x, e)] == 0 and beta.table[(y, e)] == 0]
    A = FiniteSubgroup(T.parent, a_gens)
    B = FiniteSubgroup(T.parent, b_gens)
    return A, B, a_gens, b_gens
