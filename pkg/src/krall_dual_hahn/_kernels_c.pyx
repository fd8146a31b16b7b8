# cython: boundscheck=False, wraparound=False
"""Integer polynomial kernels, compiled twin of the pure-Python module.

Same contract: dense lists of Python ints, ascending degree, no trailing
zeros, zero polynomial is the empty list.  Coefficients stay arbitrary
precision; Cython removes the interpreter overhead of the inner loops.
"""

from math import gcd


cpdef list zp_trim(list c):
    cdef Py_ssize_t n = len(c)
    while n and c[n - 1] == 0:
        n -= 1
    del c[n:]
    return c


cpdef list zp_add(list a, list b):
    cdef Py_ssize_t i
    if len(a) < len(b):
        a, b = b, a
    cdef list out = list(a)
    for i in range(len(b)):
        out[i] = out[i] + b[i]
    return zp_trim(out)


cpdef list zp_sub(list a, list b):
    cdef Py_ssize_t i, na = len(a), nb = len(b)
    cdef list out = list(a)
    if nb > na:
        out.extend([0] * (nb - na))
    for i in range(nb):
        out[i] = out[i] - b[i]
    return zp_trim(out)


cpdef list zp_neg(list a):
    return [-c for c in a]


cpdef list zp_mul(list a, list b):
    cdef Py_ssize_t i, j, na = len(a), nb = len(b)
    if na == 0 or nb == 0:
        return []
    cdef list out = [0] * (na + nb - 1)
    cdef object ai
    for i in range(na):
        ai = a[i]
        if ai != 0:
            for j in range(nb):
                out[i + j] = out[i + j] + ai * b[j]
    return zp_trim(out)


cpdef list zp_mul_scalar(list a, k):
    if k == 0:
        return []
    return [c * k for c in a]


cpdef list zp_divexact(list a, list b):
    """Quotient a/b when b divides a exactly in Z[x]."""
    cdef Py_ssize_t da, db, k, j
    if not a:
        return []
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    da = len(a) - 1
    db = len(b) - 1
    if da < db:
        raise ArithmeticError("inexact polynomial division")
    cdef list rem = list(a)
    cdef object lead = b[db], c, qc, r
    cdef list q = [0] * (da - db + 1)
    for k in range(da - db, -1, -1):
        c = rem[db + k]
        if c != 0:
            qc, r = divmod(c, lead)
            if r != 0:
                raise ArithmeticError("inexact polynomial division")
            q[k] = qc
            for j in range(db + 1):
                rem[j + k] = rem[j + k] - qc * b[j]
    for j in range(da + 1):
        if rem[j] != 0:
            raise ArithmeticError("inexact polynomial division")
    return zp_trim(q)


cpdef zp_content(list a):
    cdef object g = 0
    for c in a:
        g = gcd(g, c)
        if g == 1:
            return 1
    return g


cpdef list zp_primitive(list a):
    """Primitive part with positive leading coefficient."""
    if not a:
        return []
    cdef object g = zp_content(a)
    if a[len(a) - 1] < 0:
        g = -g
    if g == 1:
        return list(a)
    return [c // g for c in a]


cdef list _prem(list a, list b):
    cdef Py_ssize_t da = len(a) - 1, db = len(b) - 1, d, j
    cdef object lead = b[db], top, scale
    cdef list r = list(a)
    cdef Py_ssize_t e = da - db + 1
    while r and len(r) - 1 >= db:
        d = len(r) - 1
        top = r[d]
        r = [lead * c for c in r]
        for j in range(db + 1):
            r[d - db + j] = r[d - db + j] - top * b[j]
        zp_trim(r)
        e -= 1
    if e > 0:
        scale = lead ** e
        r = [c * scale for c in r]
    return r


cpdef list zp_gcd(list a, list b):
    """Gcd in Z[x], primitive with positive leading coefficient."""
    if not a:
        return zp_primitive(b)
    if not b:
        return zp_primitive(a)
    cdef object g = gcd(abs(zp_content(a)), abs(zp_content(b)))
    cdef list r
    a, b = zp_primitive(a), zp_primitive(b)
    if len(a) < len(b):
        a, b = b, a
    while b:
        if len(b) == 1:
            a = [1]
            break
        r = _prem(a, b)
        a, b = b, zp_primitive(r)
    return zp_mul_scalar(a, g)


cpdef list bareiss_det(list m):
    """Fraction-free determinant of a square matrix of Z[x] polynomials."""
    cdef Py_ssize_t n = len(m), i, j, k, pivot
    if n == 0:
        return [1]
    cdef list a = [[list(e) for e in row] for row in m]
    cdef int sign = 1
    cdef list prev = [1], t, det
    for k in range(n - 1):
        if not a[k][k]:
            pivot = -1
            for i in range(k + 1, n):
                if a[i][k]:
                    pivot = i
                    break
            if pivot < 0:
                return []
            a[k], a[pivot] = a[pivot], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                t = zp_sub(zp_mul(a[k][k], a[i][j]), zp_mul(a[i][k], a[k][j]))
                a[i][j] = zp_divexact(t, prev)
            a[i][k] = []
        prev = a[k][k]
    det = a[n - 1][n - 1]
    return zp_neg(det) if sign < 0 else list(det)
