# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the structure-constant identity checks.

Same contract as ``_kernels_py``; callers guarantee (via the overflow bound
computed in ``kernels.encode``) that all intermediate sums fit in int64.
"""

from libc.stdlib cimport calloc, free
from libc.string cimport memset


cdef inline void _term(long long* acc, char* mark, int* touched, int* ntouched,
                       long long sign, int n, int phi, const long long[:] indptr,
                       const long long[:] idx, const long long[:] coef,
                       long long first, long long left, long long right) nogil:
    cdef long long e, e2, m, p, r, a, b
    cdef int u, v, w = 2 * phi - 1
    cdef long long* row
    for e in range(indptr[first], indptr[first + 1]):
        m = idx[e]
        if right < 0:
            p = left * n + m
        else:
            p = m * n + right
        for e2 in range(indptr[p], indptr[p + 1]):
            r = idx[e2]
            if not mark[r]:
                mark[r] = 1
                touched[ntouched[0]] = <int>r
                ntouched[0] += 1
            row = acc + r * w
            for u in range(phi):
                a = coef[e * phi + u]
                if a:
                    a = a * sign
                    for v in range(phi):
                        b = coef[e2 * phi + v]
                        if b:
                            row[u + v] += a * b


cdef inline bint _flush(long long* acc, char* mark, int* touched, int ntouched,
                        int phi, const long long[:] red, long long* tmp) nogil:
    """Reduce and test every touched accumulator row, clearing them afterwards."""
    cdef int t, i, e, w = 2 * phi - 1
    cdef long long c
    cdef long long* row
    cdef bint ok = True
    for t in range(ntouched):
        row = acc + touched[t] * w
        if ok:
            for i in range(phi):
                tmp[i] = row[i]
            for e in range(phi, w):
                c = row[e]
                if c:
                    for i in range(phi):
                        tmp[i] += c * red[(e - phi) * phi + i]
            for i in range(phi):
                if tmp[i]:
                    ok = False
                    break
        memset(row, 0, w * sizeof(long long))
        mark[touched[t]] = 0
    return ok


def find_assoc_failure(int n, int phi, const long long[:] red, const long long[:] indptr,
                       const long long[:] idx, const long long[:] coef):
    cdef int w = 2 * phi - 1
    cdef long long* acc = <long long*>calloc(n * w, sizeof(long long))
    cdef char* mark = <char*>calloc(n, 1)
    cdef int* touched = <int*>calloc(n, sizeof(int))
    cdef long long* tmp = <long long*>calloc(phi, sizeof(long long))
    cdef int i, j, k, nt
    cdef long long ij, jk
    cdef tuple result = (-1, -1, -1)
    if acc == NULL or mark == NULL or touched == NULL or tmp == NULL:
        free(acc); free(mark); free(touched); free(tmp)
        raise MemoryError()
    try:
        with nogil:
            for i in range(n):
                for j in range(n):
                    ij = i * n + j
                    for k in range(n):
                        jk = j * n + k
                        if indptr[ij] == indptr[ij + 1] and indptr[jk] == indptr[jk + 1]:
                            continue
                        nt = 0
                        _term(acc, mark, touched, &nt, 1, n, phi, indptr, idx, coef, ij, -1, k)
                        _term(acc, mark, touched, &nt, -1, n, phi, indptr, idx, coef, jk, i, -1)
                        if not _flush(acc, mark, touched, nt, phi, red, tmp):
                            with gil:
                                result = (i, j, k)
                            break
                    else:
                        continue
                    break
                else:
                    continue
                break
    finally:
        free(acc); free(mark); free(touched); free(tmp)
    return result


def find_jacobi_failure(int n, int phi, const long long[:] red, const long long[:] indptr,
                        const long long[:] idx, const long long[:] coef, const long long[:] parity):
    cdef int w = 2 * phi - 1
    cdef long long* acc = <long long*>calloc(n * w, sizeof(long long))
    cdef char* mark = <char*>calloc(n, 1)
    cdef int* touched = <int*>calloc(n, sizeof(int))
    cdef long long* tmp = <long long*>calloc(phi, sizeof(long long))
    cdef int a, b, c, nt
    cdef long long ab, bc, ac, sab
    cdef tuple result = (-1, -1, -1)
    if acc == NULL or mark == NULL or touched == NULL or tmp == NULL:
        free(acc); free(mark); free(touched); free(tmp)
        raise MemoryError()
    try:
        with nogil:
            for a in range(n):
                for b in range(n):
                    ab = a * n + b
                    sab = -1 if (parity[a] and parity[b]) else 1
                    for c in range(n):
                        bc = b * n + c
                        ac = a * n + c
                        if (indptr[ab] == indptr[ab + 1] and indptr[bc] == indptr[bc + 1]
                                and indptr[ac] == indptr[ac + 1]):
                            continue
                        nt = 0
                        _term(acc, mark, touched, &nt, 1, n, phi, indptr, idx, coef, bc, a, -1)
                        _term(acc, mark, touched, &nt, -1, n, phi, indptr, idx, coef, ab, -1, c)
                        _term(acc, mark, touched, &nt, -sab, n, phi, indptr, idx, coef, ac, b, -1)
                        if not _flush(acc, mark, touched, nt, phi, red, tmp):
                            with gil:
                                result = (a, b, c)
                            break
                    else:
                        continue
                    break
                else:
                    continue
                break
    finally:
        free(acc); free(mark); free(touched); free(tmp)
    return result
