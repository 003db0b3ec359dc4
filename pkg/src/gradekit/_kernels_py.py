"""Pure-Python arithmetic kernels over Q(zeta_n).

An element is a *raw* tuple ``(den, c_0, ..., c_{d-1})`` of Python ints,
meaning ``(c_0 + c_1 x + ... + c_{d-1} x^{d-1}) / den`` modulo the n-th
cyclotomic polynomial.  Raw tuples are always normalised: ``den > 0`` and
``gcd(den, c_0, ..., c_{d-1}) == 1``, so equal elements are equal tuples.

``red`` holds the reductions of ``x^d, ..., x^{2d-2}`` modulo Phi_n as
integer tuples of length d.  ``gal`` holds, for every unit ``k != 1`` of
Z/n, the integer images of ``x^{i k}`` for ``i < d``.

This module is mirrored line for line by ``_kernels.pyx``.
"""
from math import gcd

BACKEND = "python"


def normalize(den, nums):
    g = gcd(den, *nums)
    if den < 0:
        g = -g
    if g != 1:
        return (den // g,) + tuple(c // g for c in nums)
    return (den,) + tuple(nums)


def is_zero(a):
    for c in a[1:]:
        if c:
            return False
    return True


def add(a, b):
    da = a[0]
    db = b[0]
    if da == db:
        return normalize(da, [x + y for x, y in zip(a[1:], b[1:])])
    return normalize(da * db, [x * db + y * da for x, y in zip(a[1:], b[1:])])


def sub(a, b):
    da = a[0]
    db = b[0]
    if da == db:
        return normalize(da, [x - y for x, y in zip(a[1:], b[1:])])
    return normalize(da * db, [x * db - y * da for x, y in zip(a[1:], b[1:])])


def neg(a):
    return (a[0],) + tuple(-c for c in a[1:])


def mul(a, b, red):
    d = len(a) - 1
    if d == 1:
        return normalize(a[0] * b[0], [a[1] * b[1]])
    prod = [0] * (2 * d - 1)
    for i in range(d):
        x = a[i + 1]
        if x:
            for j in range(d):
                y = b[j + 1]
                if y:
                    prod[i + j] += x * y
    out = prod[:d]
    for k in range(d, 2 * d - 1):
        c = prod[k]
        if c:
            row = red[k - d]
            for i in range(d):
                out[i] += c * row[i]
    return normalize(a[0] * b[0], out)


def galois(a, table):
    """Apply the automorphism x -> x^k given by one entry of ``gal``."""
    d = len(a) - 1
    out = [0] * d
    for i in range(d):
        c = a[i + 1]
        if c:
            row = table[i]
            for j in range(d):
                out[j] += c * row[j]
    return normalize(a[0], out)


def inv(a, red, gal):
    if is_zero(a):
        raise ZeroDivisionError("inverse of zero in cyclotomic field")
    conj = None
    for table in gal:
        s = galois(a, table)
        conj = s if conj is None else mul(conj, s, red)
    if conj is None:
        # degree-one field: a = c / den
        c = a[1]
        return normalize(c, [a[0]])
    # a * conj is the (rational) norm of a
    norm = mul(a, conj, red)
    num, den = norm[1], norm[0]
    return normalize(conj[0] * num, [c * den for c in conj[1:]])


def rref(rows, red, gal):
    """Gauss-Jordan elimination; returns (nonzero rows, pivot columns).

    ``rows`` is a list of lists of raw elements and is consumed.
    """
    nrows = len(rows)
    if nrows == 0:
        return [], []
    ncols = len(rows[0])
    if ncols == 0:
        return [], []
    one = (1, 1) + (0,) * (len(rows[0][0]) - 2)
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = -1
        for i in range(r, nrows):
            if not is_zero(rows[i][c]):
                p = i
                break
        if p < 0:
            continue
        if p != r:
            rows[p], rows[r] = rows[r], rows[p]
        prow = rows[r]
        piv = prow[c]
        if piv != one:
            f = inv(piv, red, gal)
            prow = [x if is_zero(x) else mul(x, f, red) for x in prow]
            rows[r] = prow
        nz = [j for j in range(c, ncols) if not is_zero(prow[j])]
        for i in range(nrows):
            if i == r:
                continue
            row = rows[i]
            f = row[c]
            if is_zero(f):
                continue
            for j in nz:
                row[j] = sub(row[j], mul(f, prow[j], red))
        pivots.append(c)
        r += 1
    return rows[:r], pivots


def matmul(A, B, red, zero):
    """Product of raw matrices given as sequences of rows."""
    if not A:
        return []
    ncols = len(B[0]) if B else 0
    if any(len(brow) != ncols for brow in B):
        raise ValueError("ragged matrix")
    out = []
    for arow in A:
        if len(arow) != len(B):
            raise ValueError("matrix sizes differ")
        acc = [zero] * ncols
        for k, x in enumerate(arow):
            if is_zero(x):
                continue
            brow = B[k]
            for j in range(ncols):
                y = brow[j]
                if not is_zero(y):
                    acc[j] = add(acc[j], mul(x, y, red))
        out.append(acc)
    return out


def matvec(A, v, red, zero):
    out = []
    for arow in A:
        if len(arow) != len(v):
            raise ValueError("matrix and vector sizes differ")
        acc = zero
        for x, y in zip(arow, v):
            if not is_zero(x) and not is_zero(y):
                acc = add(acc, mul(x, y, red))
        out.append(acc)
    return out
