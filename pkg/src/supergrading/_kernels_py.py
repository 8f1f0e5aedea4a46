"""Pure-Python versions of the structure-constant identity checks.

Inputs are the integer encoding produced by :func:`supergrading.kernels.encode`:
``n`` basis size, ``phi`` the degree of the cyclotomic field, ``red`` the
flattened table of x^e mod Phi_N for phi <= e < 2*phi - 1 (``(phi - 1) * phi``
ints), and a CSR table ``indptr``/``idx``/``coef`` where pair ``i*n + j``
owns entries ``indptr[p]:indptr[p+1]`` with targets ``idx[e]`` and
coefficient vectors ``coef[e*phi:(e+1)*phi]``.

Each function returns the first failing triple, or ``(-1, -1, -1)``.
"""

from __future__ import annotations


def _accumulate(acc, touched, sign, ca, off_a, cb, off_b, phi, r):
    row = acc.get(r)
    if row is None:
        row = [0] * (2 * phi - 1)
        acc[r] = row
        touched.append(r)
    for u in range(phi):
        a = ca[off_a + u]
        if a:
            a *= sign
            for v in range(phi):
                b = cb[off_b + v]
                if b:
                    row[u + v] += a * b


def _is_zero(row, phi, red):
    out = row[:phi]
    for e in range(phi, 2 * phi - 1):
        c = row[e]
        if c:
            base = (e - phi) * phi
            for i in range(phi):
                out[i] += c * red[base + i]
    return not any(out)


def _term(acc, touched, sign, n, phi, indptr, idx, coef, first, second_left, second_right):
    """acc += sign * sum_m c[first]^m * c[(m, right)]^r  (or c[(left, m)]^r)."""
    for e in range(indptr[first], indptr[first + 1]):
        m = idx[e]
        p = second_left * n + m if second_right < 0 else m * n + second_right
        for e2 in range(indptr[p], indptr[p + 1]):
            _accumulate(acc, touched, sign, coef, e * phi, coef, e2 * phi, phi, idx[e2])


def find_assoc_failure(n, phi, red, indptr, idx, coef):
    for i in range(n):
        for j in range(n):
            ij = i * n + j
            for k in range(n):
                jk = j * n + k
                if indptr[ij] == indptr[ij + 1] and indptr[jk] == indptr[jk + 1]:
                    continue
                acc = {}
                touched = []
                # (b_i b_j) b_k
                _term(acc, touched, 1, n, phi, indptr, idx, coef, ij, -1, k)
                # b_i (b_j b_k)
                _term(acc, touched, -1, n, phi, indptr, idx, coef, jk, i, -1)
                for r in touched:
                    if not _is_zero(acc[r], phi, red):
                        return (i, j, k)
    return (-1, -1, -1)


def find_jacobi_failure(n, phi, red, indptr, idx, coef, parity):
    for a in range(n):
        for b in range(n):
            ab = a * n + b
            sab = -1 if parity[a] and parity[b] else 1
            for c in range(n):
                bc = b * n + c
                ac = a * n + c
                if indptr[ab] == indptr[ab + 1] and indptr[bc] == indptr[bc + 1] and indptr[ac] == indptr[ac + 1]:
                    continue
                acc = {}
                touched = []
                # [a, [b, c]]
                _term(acc, touched, 1, n, phi, indptr, idx, coef, bc, a, -1)
                # - [[a, b], c]
                _term(acc, touched, -1, n, phi, indptr, idx, coef, ab, -1, c)
                # - (-1)^{|a||b|} [b, [a, c]]
                _term(acc, touched, -sab, n, phi, indptr, idx, coef, ac, b, -1)
                for r in touched:
                    if not _is_zero(acc[r], phi, red):
                        return (a, b, c)
    return (-1, -1, -1)
