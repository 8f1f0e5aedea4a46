"""Exact arithmetic in cyclotomic fields Q(zeta_N).

An element is stored as its coefficient vector over the power basis
1, z, ..., z^(phi(N)-1) of Q(zeta_N), reduced modulo the N-th cyclotomic
polynomial.  Mixed-conductor operations lift both operands to the lcm of
the conductors; reduction to the smallest conductor only happens through
:meth:`Cyclo.canonical`.
"""

from __future__ import annotations

import re
from functools import lru_cache
from math import gcd

try:
    from gmpy2 import mpq as Q
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    from fractions import Fraction as Q

import sympy

__all__ = ["Cyclo", "Q", "root_of_unity", "parse_scalar", "format_scalar", "as_cyclo", "ZERO", "ONE"]

_RATIONAL_TYPES = (int, type(Q(0)))


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


@lru_cache(maxsize=None)
def _cyclotomic(n: int) -> tuple[int, ...]:
    """Coefficients of Phi_n, lowest degree first."""
    x = sympy.Symbol("x")
    coeffs = sympy.Poly(sympy.cyclotomic_poly(n, x), x).all_coeffs()
    return tuple(int(c) for c in reversed(coeffs))


@lru_cache(maxsize=None)
def _phi(n: int) -> int:
    return len(_cyclotomic(n)) - 1


@lru_cache(maxsize=None)
def _power_table(n: int) -> tuple[tuple[int, ...], ...]:
    """x^k mod Phi_n for 0 <= k < max(n, 2*phi(n)), as integer vectors."""
    phi = _phi(n)
    poly = _cyclotomic(n)
    rows = []
    cur = [0] * phi
    cur[0] = 1
    for _ in range(max(n, 2 * phi)):
        rows.append(tuple(cur))
        # multiply by x and reduce the top coefficient with the monic Phi_n
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            for i in range(phi):
                cur[i] -= top * poly[i]
    return tuple(rows)


@lru_cache(maxsize=None)
def _reduction_rows(n: int) -> tuple[tuple[tuple[int, int], ...], ...]:
    """Sparse rows of x^k mod Phi_n for phi <= k < 2*phi - 1."""
    phi = _phi(n)
    table = _power_table(n)
    return tuple(
        tuple((i, v) for i, v in enumerate(table[k]) if v) for k in range(phi, 2 * phi - 1)
    )


@lru_cache(maxsize=None)
def _lift_rows(n: int, m: int) -> tuple[tuple[tuple[int, int], ...], ...]:
    """Images of z_n^j (j < phi(n)) inside Q(zeta_m), m a multiple of n."""
    step = m // n
    table = _power_table(m)
    return tuple(
        tuple((i, v) for i, v in enumerate(table[(j * step) % m]) if v) for j in range(_phi(n))
    )


@lru_cache(maxsize=None)
def _descent(n: int, d: int):
    """Solver deciding membership of Q(zeta_n) elements in Q(zeta_d), d | n.

    Returns (phi(d), pivot columns, rows of the reduced [L | I] system), where L
    lifts Q(zeta_d) coordinates into Q(zeta_n); applying the right block to a
    vector reads off its Q(zeta_d) coordinates and tests membership.
    """
    lift = _lift_rows(d, n)
    phi_n, phi_d = _phi(n), _phi(d)
    # columns: coordinates in Q(zeta_d); rows: coordinates in Q(zeta_n)
    mat = [[Q(0)] * (phi_d + phi_n) for _ in range(phi_n)]
    for j, row in enumerate(lift):
        for i, v in row:
            mat[i][j] = Q(v)
    for i in range(phi_n):
        mat[i][phi_d + i] = Q(1)
    pivots = []
    r = 0
    for col in range(phi_d):
        piv = next((k for k in range(r, phi_n) if mat[k][col] != 0), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = 1 / mat[r][col]
        mat[r] = [v * inv for v in mat[r]]
        for k in range(phi_n):
            if k != r and mat[k][col] != 0:
                f = mat[k][col]
                mat[k] = [a - f * b for a, b in zip(mat[k], mat[r])]
        pivots.append(col)
        r += 1
    return phi_d, tuple(pivots), tuple(tuple(row) for row in mat)


def _to_q(x) -> Q:
    if isinstance(x, Q):
        return x
    return Q(x)


class Cyclo:
    """An element of Q(zeta_n) in power-basis coordinates."""

    __slots__ = ("n", "c")

    def __init__(self, n: int, coeffs):
        if n < 1:
            raise ValueError("conductor must be a positive integer")
        coeffs = tuple(_to_q(v) for v in coeffs)
        if len(coeffs) != _phi(n):
            raise ValueError(f"expected {_phi(n)} coefficients for conductor {n}")
        self.n = n
        self.c = coeffs

    @classmethod
    def _raw(cls, n: int, coeffs: tuple) -> "Cyclo":
        obj = object.__new__(cls)
        obj.n = n
        obj.c = coeffs
        return obj

    @classmethod
    def rational(cls, q) -> "Cyclo":
        return cls._raw(1, (_to_q(q),))

    # -- conversions -------------------------------------------------------

    def lift(self, m: int) -> "Cyclo":
        """Same element written in Q(zeta_m); m must be a multiple of n."""
        if m == self.n:
            return self
        if m % self.n:
            raise ValueError(f"cannot lift conductor {self.n} to {m}")
        out = [Q(0)] * _phi(m)
        for cj, row in zip(self.c, _lift_rows(self.n, m)):
            if cj:
                for i, v in row:
                    out[i] += cj * v
        return Cyclo._raw(m, tuple(out))

    def canonical(self) -> "Cyclo":
        """Rewrite in the smallest conductor whose field contains the element."""
        n = self.n
        if n == 1:
            return self
        for d in sorted(k for k in range(1, n) if n % k == 0):
            phi_d, pivots, rows = _descent(n, d)
            coords = [Q(0)] * phi_d
            ok = True
            # row-reduced [L | I]; apply the right block to the vector
            for r, row in enumerate(rows):
                val = sum((row[phi_d + i] * ci for i, ci in enumerate(self.c) if ci), Q(0))
                if r < len(pivots):
                    coords[pivots[r]] = val
                elif val != 0:
                    ok = False
                    break
            if ok:
                return Cyclo._raw(d, tuple(coords))
        return self

    def is_rational(self) -> bool:
        return all(v == 0 for v in self.c[1:]) and (self.n == 1 or self.canonical().n == 1)

    def to_rational(self):
        can = self.canonical()
        if can.n != 1:
            raise ValueError(f"{format_scalar(self)} is not rational")
        return can.c[0]

    def root_exponent(self, order: int):
        """k with self == zeta_order^k, or None if no such k exists."""
        for k in range(order):
            if self == root_of_unity(order, k):
                return k
        return None

    # -- arithmetic --------------------------------------------------------

    @staticmethod
    def _coerce(other):
        if isinstance(other, Cyclo):
            return other
        if isinstance(other, _RATIONAL_TYPES) or hasattr(other, "denominator"):
            return Cyclo._raw(1, (_to_q(other),))
        return NotImplemented

    def _common(self, other: "Cyclo"):
        if self.n == other.n:
            return self.n, self.c, other.c
        m = _lcm(self.n, other.n)
        return m, self.lift(m).c, other.lift(m).c

    def __add__(self, other):
        other = Cyclo._coerce(other)
        if other is NotImplemented:
            return other
        if self.n == 1 and other.n == 1:
            return Cyclo._raw(1, (self.c[0] + other.c[0],))
        m, a, b = self._common(other)
        return Cyclo._raw(m, tuple(x + y for x, y in zip(a, b)))

    __radd__ = __add__

    def __neg__(self):
        return Cyclo._raw(self.n, tuple(-x for x in self.c))

    def __sub__(self, other):
        other = Cyclo._coerce(other)
        if other is NotImplemented:
            return other
        if self.n == 1 and other.n == 1:
            return Cyclo._raw(1, (self.c[0] - other.c[0],))
        m, a, b = self._common(other)
        return Cyclo._raw(m, tuple(x - y for x, y in zip(a, b)))

    def __rsub__(self, other):
        other = Cyclo._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = Cyclo._coerce(other)
        if other is NotImplemented:
            return other
        if other.n == 1:
            s = other.c[0]
            return Cyclo._raw(self.n, tuple(x * s for x in self.c))
        if self.n == 1:
            s = self.c[0]
            return Cyclo._raw(other.n, tuple(x * s for x in other.c))
        m, a, b = self._common(other)
        phi = len(a)
        prod = [Q(0)] * (2 * phi - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        out = prod[:phi]
        for k, row in enumerate(_reduction_rows(m)):
            top = prod[phi + k]
            if top:
                for i, v in row:
                    out[i] += top * v
        return Cyclo._raw(m, tuple(out))

    __rmul__ = __mul__

    def inv(self) -> "Cyclo":
        if not self:
            raise ZeroDivisionError("inversion of zero in a cyclotomic field")
        if self.n == 1:
            return Cyclo._raw(1, (1 / self.c[0],))
        n, phi = self.n, len(self.c)
        # multiplication-by-self matrix, columns are self * z^j
        cols = []
        zj = Cyclo._raw(n, tuple(Q(1) if i == 0 else Q(0) for i in range(phi)))
        z = root_of_unity_raw(n, 1)
        for _ in range(phi):
            cols.append((self * zj).c)
            zj = zj * z
        aug = [[cols[j][i] for j in range(phi)] + [Q(1) if i == 0 else Q(0)] for i in range(phi)]
        for col in range(phi):
            piv = next(k for k in range(col, phi) if aug[k][col] != 0)
            aug[col], aug[piv] = aug[piv], aug[col]
            f = 1 / aug[col][col]
            aug[col] = [v * f for v in aug[col]]
            for k in range(phi):
                if k != col and aug[k][col] != 0:
                    g = aug[k][col]
                    aug[k] = [a - g * b for a, b in zip(aug[k], aug[col])]
        return Cyclo._raw(n, tuple(aug[i][phi] for i in range(phi)))

    def __truediv__(self, other):
        other = Cyclo._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inv()

    def __rtruediv__(self, other):
        other = Cyclo._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inv()

    def __pow__(self, k: int):
        if k < 0:
            return self.inv() ** (-k)
        result = ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- comparison --------------------------------------------------------

    def __bool__(self):
        return any(self.c)

    def __eq__(self, other):
        other = Cyclo._coerce(other)
        if other is NotImplemented:
            return False
        if self.n == other.n:
            return self.c == other.c
        _, a, b = self._common(other)
        return a == b

    def __hash__(self):
        can = self.canonical()
        if can.n == 1:
            return hash(can.c[0])
        return hash((can.n, can.c))

    def __repr__(self):
        return f"Cyclo({format_scalar(self)!r})"

    def __str__(self):
        return str(format_scalar(self))


def root_of_unity_raw(n: int, k: int) -> Cyclo:
    """zeta_n^k written in Q(zeta_n) without canonicalization."""
    if n < 1:
        raise ValueError("root_of_unity needs N >= 1")
    return Cyclo._raw(n, tuple(Q(v) for v in _power_table(n)[k % n]))


@lru_cache(maxsize=4096)
def root_of_unity(n: int, k: int) -> Cyclo:
    """zeta_n^k in canonical (smallest conductor) form; zeta_n = exp(2 pi i / n)."""
    if n < 1:
        raise ValueError("root_of_unity needs N >= 1")
    k %= n
    g = gcd(n, k) if k else n
    d = n // g
    return root_of_unity_raw(d, k // g).canonical()


ZERO = Cyclo.rational(0)
ONE = Cyclo.rational(1)


def as_cyclo(x) -> Cyclo:
    c = Cyclo._coerce(x)
    if c is NotImplemented:
        raise TypeError(f"cannot interpret {x!r} as a cyclotomic scalar")
    return c


# -- literal text form ------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(z)(\d+)(?:\^(-?\d+))?|(\d+)(?:/(\d+))?|([-+*]))")


def parse_scalar(text) -> Cyclo:
    """Parse a literal such as ``"z4^3 * 5/2"``, ``"-1"`` or ``"1/2 + z3"``."""
    if isinstance(text, Cyclo):
        return text
    if isinstance(text, bool):
        raise ValueError(f"not a scalar literal: {text!r}")
    if isinstance(text, int):
        return Cyclo.rational(text)
    if not isinstance(text, str):
        raise ValueError(f"not a scalar literal: {text!r}")
    pos = 0
    tokens = []
    stripped = text.strip()
    if not stripped:
        raise ValueError("empty scalar literal")
    while pos < len(stripped):
        m = _TOKEN.match(stripped, pos)
        if not m or m.end() == pos:
            raise ValueError(f"bad scalar literal {text!r} at offset {pos}")
        tokens.append(m)
        pos = m.end()
        while pos < len(stripped) and stripped[pos].isspace():
            pos += 1

    total = ZERO
    term = None
    sign = 1
    expect_factor = True
    for m in tokens:
        op = m.group(6)
        if op in ("+", "-"):
            if expect_factor:
                # unary sign
                sign = -sign if op == "-" else sign
                continue
            total = total + term * sign
            term, sign, expect_factor = None, 1 if op == "+" else -1, True
            continue
        if op == "*":
            if expect_factor:
                raise ValueError(f"misplaced '*' in {text!r}")
            expect_factor = True
            continue
        if not expect_factor:
            raise ValueError(f"missing operator in {text!r}")
        if m.group(1):
            n = int(m.group(2))
            if n < 1:
                raise ValueError(f"conductor must be positive in {text!r}")
            k = int(m.group(3)) if m.group(3) is not None else 1
            factor = root_of_unity_raw(n, k)
        else:
            den = int(m.group(5)) if m.group(5) is not None else 1
            if den == 0:
                raise ValueError(f"zero denominator in {text!r}")
            factor = Cyclo.rational(Q(int(m.group(4)), den))
        term = factor if term is None else term * factor
        expect_factor = False
    if expect_factor:
        raise ValueError(f"incomplete scalar literal {text!r}")
    total = total + term * sign
    return total


def format_scalar(x):
    """Canonical literal; rational values come out as int or 'p/q' strings."""
    x = as_cyclo(x).canonical()
    if x.n == 1:
        q = x.c[0]
        if q.denominator == 1:
            return int(q.numerator)
        return f"{q.numerator}/{q.denominator}"
    parts = []
    for j, cj in enumerate(x.c):
        if not cj:
            continue
        cs = str(int(cj.numerator)) if cj.denominator == 1 else f"{cj.numerator}/{cj.denominator}"
        if j == 0:
            parts.append(cs)
            continue
        z = f"z{x.n}" + (f"^{j}" if j > 1 else "")
        parts.append(z if cj == 1 else f"{z} * {cs}")
    return " + ".join(parts)
