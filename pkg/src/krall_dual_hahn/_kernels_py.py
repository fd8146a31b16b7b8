"""Integer polynomial kernels, pure Python.

Polynomials are dense lists of Python ints, ascending degree, no trailing
zeros; the zero polynomial is the empty list.  These routines carry the hot
arithmetic for the rational-function layer: products, exact quotients,
primitive-PRS gcds, and fraction-free determinants.
"""

from math import gcd


def zp_trim(c):
    n = len(c)
    while n and c[n - 1] == 0:
        n -= 1
    del c[n:]
    return c


def zp_add(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i in range(len(b)):
        out[i] += b[i]
    return zp_trim(out)


def zp_sub(a, b):
    out = list(a) + [0] * (len(b) - len(a))
    for i in range(len(b)):
        out[i] -= b[i]
    return zp_trim(out)


def zp_neg(a):
    return [-c for c in a]


def zp_mul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return zp_trim(out)


def zp_mul_scalar(a, k):
    if k == 0:
        return []
    return [c * k for c in a]


def zp_divexact(a, b):
    """Quotient a/b when b divides a exactly in Z[x]."""
    if not a:
        return []
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    da, db = len(a) - 1, len(b) - 1
    if da < db:
        raise ArithmeticError("inexact polynomial division")
    rem = list(a)
    lead = b[db]
    q = [0] * (da - db + 1)
    for k in range(da - db, -1, -1):
        c = rem[db + k]
        if c:
            qc, r = divmod(c, lead)
            if r:
                raise ArithmeticError("inexact polynomial division")
            q[k] = qc
            for j in range(db + 1):
                rem[j + k] -= qc * b[j]
    if any(rem):
        raise ArithmeticError("inexact polynomial division")
    return zp_trim(q)


def zp_content(a):
    g = 0
    for c in a:
        g = gcd(g, c)
        if g == 1:
            return 1
    return g


def zp_primitive(a):
    """Primitive part with positive leading coefficient."""
    if not a:
        return []
    g = zp_content(a)
    if a[-1] < 0:
        g = -g
    if g == 1:
        return list(a)
    return [c // g for c in a]


def _prem(a, b):
    """Pseudo-remainder of a by b: lc(b)^(deg a - deg b + 1) * a mod b."""
    da, db = len(a) - 1, len(b) - 1
    lead = b[db]
    r = list(a)
    e = da - db + 1
    while r and len(r) - 1 >= db:
        d = len(r) - 1
        top = r[d]
        r = [lead * c for c in r]
        for j in range(db + 1):
            r[d - db + j] -= top * b[j]
        zp_trim(r)
        e -= 1
    if e > 0:
        scale = lead ** e
        r = [c * scale for c in r]
    return r


def zp_gcd(a, b):
    """Gcd in Z[x], primitive with positive leading coefficient."""
    if not a:
        return zp_primitive(b)
    if not b:
        return zp_primitive(a)
    ca, cb = abs(zp_content(a)), abs(zp_content(b))
    g = gcd(ca, cb)
    a, b = zp_primitive(a), zp_primitive(b)
    if len(a) < len(b):
        a, b = b, a
    while b:
        if len(b) == 1:
            a = [1]
            break
        r = _prem(a, b)
        a, b = b, zp_primitive(r)
    out = zp_mul_scalar(a, g)
    return out


def bareiss_det(m):
    """Fraction-free determinant of a square matrix of Z[x] polynomials."""
    n = len(m)
    if n == 0:
        return [1]
    a = [[list(e) for e in row] for row in m]
    sign = 1
    prev = [1]
    for k in range(n - 1):
        if not a[k][k]:
            pivot = next((i for i in range(k + 1, n) if a[i][k]), -1)
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
