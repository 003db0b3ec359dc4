# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled twin of ``_kernels_py``; same raw-tuple conventions and API."""
from math import gcd

BACKEND = "cython"


cdef tuple _normalize(object den, list nums):
    cdef Py_ssize_t i, n = len(nums)
    cdef object g = gcd(den, *nums)
    if den < 0:
        g = -g
    if g != 1:
        for i in range(n):
            nums[i] = nums[i] // g
        den = den // g
    return (den,) + tuple(nums)


cdef inline bint _is_zero(tuple a):
    cdef Py_ssize_t i, n = len(a)
    for i in range(1, n):
        if a[i]:
            return False
    return True


cdef tuple _add(tuple a, tuple b):
    cdef Py_ssize_t i, n = len(a)
    cdef object da = a[0], db = b[0]
    cdef list out = [None] * (n - 1)
    if da == db:
        for i in range(1, n):
            out[i - 1] = a[i] + b[i]
        return _normalize(da, out)
    for i in range(1, n):
        out[i - 1] = a[i] * db + b[i] * da
    return _normalize(da * db, out)


cdef tuple _sub(tuple a, tuple b):
    cdef Py_ssize_t i, n = len(a)
    cdef object da = a[0], db = b[0]
    cdef list out = [None] * (n - 1)
    if da == db:
        for i in range(1, n):
            out[i - 1] = a[i] - b[i]
        return _normalize(da, out)
    for i in range(1, n):
        out[i - 1] = a[i] * db - b[i] * da
    return _normalize(da * db, out)


cdef tuple _mul(tuple a, tuple b, tuple red):
    cdef Py_ssize_t d = len(a) - 1
    cdef Py_ssize_t i, j, k
    cdef object x, y, c
    cdef tuple row
    if d == 1:
        return _normalize(a[0] * b[0], [a[1] * b[1]])
    cdef list prod = [0] * (2 * d - 1)
    for i in range(d):
        x = a[i + 1]
        if x:
            for j in range(d):
                y = b[j + 1]
                if y:
                    prod[i + j] = prod[i + j] + x * y
    cdef list out = prod[:d]
    for k in range(d, 2 * d - 1):
        c = prod[k]
        if c:
            row = <tuple>red[k - d]
            for i in range(d):
                out[i] = out[i] + c * row[i]
    return _normalize(a[0] * b[0], out)


cdef tuple _galois(tuple a, tuple table):
    cdef Py_ssize_t d = len(a) - 1
    cdef Py_ssize_t i, j
    cdef object c
    cdef tuple row
    cdef list out = [0] * d
    for i in range(d):
        c = a[i + 1]
        if c:
            row = <tuple>table[i]
            for j in range(d):
                out[j] = out[j] + c * row[j]
    return _normalize(a[0], out)


cdef tuple _inv(tuple a, tuple red, tuple gal):
    cdef object conj = None
    cdef tuple s, norm
    if _is_zero(a):
        raise ZeroDivisionError("inverse of zero in cyclotomic field")
    for table in gal:
        s = _galois(a, <tuple>table)
        conj = s if conj is None else _mul(<tuple>conj, s, red)
    if conj is None:
        return _normalize(a[1], [a[0]])
    norm = _mul(a, <tuple>conj, red)
    num = norm[1]
    den = norm[0]
    return _normalize(conj[0] * num, [c * den for c in (<tuple>conj)[1:]])


def normalize(den, nums):
    return _normalize(den, list(nums))


def is_zero(tuple a):
    return _is_zero(a)


def add(tuple a, tuple b):
    return _add(a, b)


def sub(tuple a, tuple b):
    return _sub(a, b)


def neg(tuple a):
    return (a[0],) + tuple(-c for c in a[1:])


def mul(tuple a, tuple b, tuple red):
    return _mul(a, b, red)


def galois(tuple a, tuple table):
    return _galois(a, table)


def inv(tuple a, tuple red, tuple gal):
    return _inv(a, red, gal)


def rref(list rows, tuple red, tuple gal):
    cdef Py_ssize_t nrows = len(rows)
    cdef Py_ssize_t ncols, r = 0, c, i, j, p
    cdef list pivots = []
    cdef list prow, row, nz
    cdef tuple piv, f, x, one
    if nrows == 0:
        return [], []
    ncols = len(rows[0])
    if ncols == 0:
        return [], []
    one = (1, 1) + (0,) * (len(<tuple>(<list>rows[0])[0]) - 2)
    for c in range(ncols):
        if r == nrows:
            break
        p = -1
        for i in range(r, nrows):
            if not _is_zero(<tuple>(<list>rows[i])[c]):
                p = i
                break
        if p < 0:
            continue
        if p != r:
            rows[p], rows[r] = rows[r], rows[p]
        prow = <list>rows[r]
        piv = <tuple>prow[c]
        if piv != one:
            f = _inv(piv, red, gal)
            prow = [x if _is_zero(x) else _mul(x, f, red) for x in prow]
            rows[r] = prow
        nz = [j for j in range(c, ncols) if not _is_zero(<tuple>prow[j])]
        for i in range(nrows):
            if i == r:
                continue
            row = <list>rows[i]
            f = <tuple>row[c]
            if _is_zero(f):
                continue
            for j in nz:
                row[j] = _sub(<tuple>row[j], _mul(f, <tuple>prow[j], red))
        pivots.append(c)
        r += 1
    return rows[:r], pivots


def matmul(A, B, tuple red, tuple zero):
    cdef Py_ssize_t k, j, ncols
    cdef list out = [], acc
    cdef tuple x, y
    if not A:
        return []
    ncols = len(B[0]) if B else 0
    for brow in B:
        if len(brow) != ncols:
            raise ValueError("ragged matrix")
    for arow in A:
        if len(arow) != len(B):
            raise ValueError("matrix sizes differ")
        acc = [zero] * ncols
        for k in range(len(arow)):
            x = <tuple>arow[k]
            if _is_zero(x):
                continue
            brow = B[k]
            for j in range(ncols):
                y = <tuple>brow[j]
                if not _is_zero(y):
                    acc[j] = _add(<tuple>acc[j], _mul(x, y, red))
        out.append(acc)
    return out


def matvec(A, v, tuple red, tuple zero):
    cdef list out = []
    cdef tuple acc, x, y
    cdef Py_ssize_t k
    for arow in A:
        if len(arow) != len(v):
            raise ValueError("matrix and vector sizes differ")
        acc = zero
        for k in range(len(arow)):
            x = <tuple>arow[k]
            y = <tuple>v[k]
            if not _is_zero(x) and not _is_zero(y):
                acc = _add(acc, _mul(x, y, red))
        out.append(acc)
    return out
