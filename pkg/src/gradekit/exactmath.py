"""Exact arithmetic over cyclotomic fields and exact linear algebra.

Every scalar in gradekit lives in Q(zeta_n) for a fixed conductor n.  The
heavy lifting happens on *raw* tuples (see :mod:`gradekit._kernels_py`);
:class:`Cyclotomic`, :class:`ScalarMatrix` and :class:`Subspace` are thin
immutable wrappers around them.

>>> F = field(4)
>>> i = F.zeta()
>>> i * i
Cyclotomic(4, [-1, 0])
>>> (1 + i).inv() == (1 - i) / 2
True
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Sequence

from gradekit import kernels as K
from gradekit.errors import ConductorMismatch, ConductorTooSmall, DimensionMismatch, GradeKitError

__all__ = [
    "CyclotomicField",
    "Cyclotomic",
    "ScalarMatrix",
    "Subspace",
    "field",
    "cyclotomic_polynomial",
    "field_arith",
    "canonicalize",
    "subspace_meet_join",
    "smith_normal_form",
]


# ---------------------------------------------------------------------------
# cyclotomic polynomials


def _poly_divexact(num: list[int], den: list[int]) -> list[int]:
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    lead = den[-1]
    for k in range(len(out) - 1, -1, -1):
        c = num[k + len(den) - 1]
        q, r = divmod(c, lead)
        if r:
            raise ArithmeticError("inexact polynomial division")
        out[k] = q
        if q:
            for i, d in enumerate(den):
                num[k + i] -= q * d
    if any(num[: len(den) - 1]):
        raise ArithmeticError("inexact polynomial division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, lowest degree first."""
    if n < 1:
        raise ValueError("conductor must be a positive integer")
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly = _poly_divexact(poly, list(cyclotomic_polynomial(d)))
    return tuple(poly)


def _reduce_power(k: int, phi: Sequence[int]) -> tuple[int, ...]:
    """x^k mod Phi as an integer vector of length deg Phi."""
    d = len(phi) - 1
    vec = [0] * (max(k, d - 1) + 1)
    vec[k] = 1
    for top in range(len(vec) - 1, d - 1, -1):
        c = vec[top]
        if c:
            vec[top] = 0
            for i in range(d):
                vec[top - d + i] -= c * phi[i]
    return tuple(vec[:d])


class CyclotomicField:
    """The field Q(zeta_n) with zeta_n = exp(2 pi i / n).

    Use :func:`field` to obtain the (cached) instance for a conductor.
    """

    def __init__(self, n: int):
        self.n = n
        self.phi = cyclotomic_polynomial(n)
        self.degree = d = len(self.phi) - 1
        self.red = tuple(_reduce_power(k, self.phi) for k in range(d, 2 * d - 1))
        self.powers = tuple(_reduce_power(k, self.phi) for k in range(n))
        self.units = tuple(k for k in range(1, n + 1) if gcd(k, n) == 1 and k % n != 1 % n)
        self.gal = tuple(self._galois_table(k) for k in self.units)
        self.conj_table = self._galois_table(n - 1) if n > 2 else None
        self.zero_raw = (1,) + (0,) * d
        self.one_raw = (1, 1) + (0,) * (d - 1)

    def _galois_table(self, k: int) -> tuple[tuple[int, ...], ...]:
        return tuple(self.powers[(i * k) % self.n] for i in range(self.degree))

    def __repr__(self):
        return f"CyclotomicField({self.n})"

    def __reduce__(self):
        return (field, (self.n,))

    # -- constructors -----------------------------------------------------
    def __call__(self, value) -> "Cyclotomic":
        return self.coerce(value)

    def coerce(self, value) -> "Cyclotomic":
        if isinstance(value, Cyclotomic):
            if value.field is not self:
                raise ConductorMismatch(
                    f"conductor mismatch: {value.field.n} vs {self.n}")
            return value
        return Cyclotomic(self, self.raw_of(value))

    def raw_of(self, value) -> tuple:
        """Raw tuple for an int, Fraction, string, or Cyclotomic of this field."""
        if isinstance(value, Cyclotomic):
            if value.field is not self:
                raise ConductorMismatch(
                    f"conductor mismatch: {value.field.n} vs {self.n}")
            return value.raw
        if isinstance(value, bool):
            value = int(value)
        if isinstance(value, int):
            return (1, value) + (0,) * (self.degree - 1)
        if isinstance(value, (Fraction, str)):
            q = Fraction(value)
            return (q.denominator, q.numerator) + (0,) * (self.degree - 1)
        if isinstance(value, tuple) and len(value) == self.degree + 1:
            return K.normalize(value[0], value[1:])
        raise TypeError(f"cannot coerce {value!r} into {self!r}")

    def from_coeffs(self, coeffs: Sequence) -> "Cyclotomic":
        """Element sum_k coeffs[k] zeta^k; any length, reduced mod Phi_n."""
        fr = [Fraction(c) for c in coeffs]
        den = 1
        for q in fr:
            den = den * q.denominator // gcd(den, q.denominator)
        nums = [0] * self.degree
        for k, q in enumerate(fr):
            c = q.numerator * (den // q.denominator)
            if c:
                for i, p in enumerate(self.powers[k % self.n]):
                    nums[i] += c * p
        return Cyclotomic(self, K.normalize(den, nums))

    def zeta(self, k: int = 1) -> "Cyclotomic":
        return Cyclotomic(self, (1,) + self.powers[k % self.n])

    @property
    def zero(self) -> "Cyclotomic":
        return Cyclotomic(self, self.zero_raw)

    @property
    def one(self) -> "Cyclotomic":
        return Cyclotomic(self, self.one_raw)

    def max_root_order(self) -> int:
        """Largest m such that all m-th roots of unity lie in the field."""
        return self.n if self.n % 2 == 0 else 2 * self.n

    def root_of_unity(self, order: int, k: int = 1) -> "Cyclotomic":
        """zeta_order^k, provided it lies in this field."""
        if self.max_root_order() % order:
            need = order // 2 if order % 4 == 2 else order
            raise ConductorTooSmall(
                f"roots of unity of order {order} need a conductor that is a multiple "
                f"of {need} (conductor {self.n} given)", need)
        if self.n % order == 0:
            return self.zeta((self.n // order) * k)
        # n odd: exp(pi i / n) = -zeta_n^((n+1)/2)
        base = -self.zeta((self.n + 1) // 2)
        return base ** ((2 * self.n // order) * k % (2 * self.n))

    def roots_of_unity(self) -> list["Cyclotomic"]:
        """All roots of unity in the field, ordered by exponent of the generator."""
        top = self.max_root_order()
        return [self.root_of_unity(top, k) for k in range(top)]

    # -- raw helpers used across the package -------------------------------
    def raw_add(self, a, b):
        return K.add(a, b)

    def raw_mul(self, a, b):
        return K.mul(a, b, self.red)

    def raw_inv(self, a):
        return K.inv(a, self.red, self.gal)

    def raw_conj(self, a):
        if self.conj_table is None:
            return a
        return K.galois(a, self.conj_table)


@lru_cache(maxsize=None)
def field(n: int) -> CyclotomicField:
    """The cached field of conductor n."""
    if not isinstance(n, int) or n < 1:
        raise ValueError("conductor must be a positive integer")
    return CyclotomicField(n)


# ---------------------------------------------------------------------------
# scalars


class Cyclotomic:
    """Immutable element of Q(zeta_n)."""

    __slots__ = ("field", "raw")

    def __init__(self, fld: CyclotomicField, raw: tuple):
        self.field = fld
        self.raw = raw

    @property
    def conductor(self) -> int:
        return self.field.n

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        den = self.raw[0]
        return tuple(Fraction(c, den) for c in self.raw[1:])

    def _other(self, other):
        if isinstance(other, Cyclotomic):
            if other.field is not self.field:
                raise ConductorMismatch(
                    f"conductor mismatch: {self.field.n} vs {other.field.n}")
            return other.raw
        try:
            return self.field.raw_of(other)
        except TypeError:
            return None

    def __add__(self, other):
        b = self._other(other)
        if b is None:
            return NotImplemented
        return Cyclotomic(self.field, K.add(self.raw, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._other(other)
        if b is None:
            return NotImplemented
        return Cyclotomic(self.field, K.sub(self.raw, b))

    def __rsub__(self, other):
        b = self._other(other)
        if b is None:
            return NotImplemented
        return Cyclotomic(self.field, K.sub(b, self.raw))

    def __mul__(self, other):
        b = self._other(other)
        if b is None:
            return NotImplemented
        return Cyclotomic(self.field, K.mul(self.raw, b, self.field.red))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._other(other)
        if b is None:
            return NotImplemented
        return Cyclotomic(self.field, K.mul(self.raw, self.field.raw_inv(b), self.field.red))

    def __rtruediv__(self, other):
        b = self._other(other)
        if b is None:
            return NotImplemented
        return Cyclotomic(self.field, K.mul(b, self.field.raw_inv(self.raw), self.field.red))

    def __neg__(self):
        return Cyclotomic(self.field, K.neg(self.raw))

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        base = self if k >= 0 else self.inv()
        k = abs(k)
        result = self.field.one_raw
        b = base.raw
        while k:
            if k & 1:
                result = K.mul(result, b, self.field.red)
            b = K.mul(b, b, self.field.red)
            k >>= 1
        return Cyclotomic(self.field, result)

    def inv(self) -> "Cyclotomic":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in cyclotomic field")
        return Cyclotomic(self.field, self.field.raw_inv(self.raw))

    def conj(self) -> "Cyclotomic":
        """Complex conjugate, i.e. zeta -> zeta^-1."""
        return Cyclotomic(self.field, self.field.raw_conj(self.raw))

    def is_zero(self) -> bool:
        return K.is_zero(self.raw)

    def is_rational(self) -> bool:
        return not any(self.raw[2:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return Fraction(self.raw[1], self.raw[0])

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, Cyclotomic):
            return self.field is other.field and self.raw == other.raw
        try:
            return self.raw == self.field.raw_of(other)
        except TypeError:
            return NotImplemented

    def __hash__(self):
        if self.is_rational():
            return hash(Fraction(self.raw[1], self.raw[0]))
        return hash((self.field.n, self.raw))

    def __repr__(self):
        return f"Cyclotomic({self.field.n}, [{', '.join(str(c) for c in self.coeffs)}])"

    def __str__(self):
        terms = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            z = "" if k == 0 else (f"z{self.field.n}" if k == 1 else f"z{self.field.n}^{k}")
            if not z:
                terms.append(str(c))
            elif c == 1:
                terms.append(z)
            elif c == -1:
                terms.append("-" + z)
            else:
                terms.append(f"{c}*{z}")
        if not terms:
            return "0"
        return " + ".join(terms).replace("+ -", "- ")


def field_arith(a: Cyclotomic, b: Cyclotomic | None = None, op: str = "add"):
    """Dispatch one of add|mul|inv|conj|eq on exact scalars."""
    if op in ("inv", "conj"):
        return a.inv() if op == "inv" else a.conj()
    if b is None:
        raise ValueError(f"operation {op!r} needs two operands")
    if a.field is not b.field:
        raise ConductorMismatch(f"conductor mismatch: {a.field.n} vs {b.field.n}")
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "eq":
        return a == b
    raise ValueError(f"unknown operation {op!r}")


# ---------------------------------------------------------------------------
# raw linear algebra


def rref_raw(fld: CyclotomicField, rows: Iterable[Sequence]) -> tuple[list[list], list[int]]:
    """Reduced row echelon form of raw rows (input is not modified)."""
    return K.rref([list(r) for r in rows], fld.red, fld.gal)


def nullspace_raw(fld: CyclotomicField, rows: Sequence[Sequence], ncols: int) -> list[list]:
    """Basis of {x : A x = 0}; one vector per free column, in column order."""
    red, pivots = rref_raw(fld, rows)
    pivset = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivset:
            continue
        vec = [fld.zero_raw] * ncols
        vec[f] = fld.one_raw
        for r, p in enumerate(pivots):
            x = red[r][f]
            if not K.is_zero(x):
                vec[p] = K.neg(x)
        basis.append(vec)
    return basis


def inverse_raw(fld: CyclotomicField, rows: Sequence[Sequence]) -> list[list] | None:
    n = len(rows)
    zero, one = fld.zero_raw, fld.one_raw
    aug = [list(r) + [one if i == j else zero for j in range(n)] for i, r in enumerate(rows)]
    red, pivots = K.rref(aug, fld.red, fld.gal)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        return None
    return [r[n:] for r in red]


def matmul_raw(fld, A, B):
    return K.matmul(A, B, fld.red, fld.zero_raw)


def matvec_raw(fld, A, v):
    return K.matvec(A, v, fld.red, fld.zero_raw)


def dot_raw(fld, u, v):
    acc = fld.zero_raw
    for x, y in zip(u, v):
        if not K.is_zero(x) and not K.is_zero(y):
            acc = K.add(acc, K.mul(x, y, fld.red))
    return acc


def scale_raw(fld, c, v):
    return [x if K.is_zero(x) else K.mul(c, x, fld.red) for x in v]


def axpy_raw(fld, c, x, y):
    """c*x + y elementwise."""
    out = []
    for a, b in zip(x, y):
        if K.is_zero(a):
            out.append(b)
        else:
            out.append(K.add(K.mul(c, a, fld.red), b))
    return out


def is_zero_vec(v) -> bool:
    return all(K.is_zero(x) for x in v)


# ---------------------------------------------------------------------------
# matrices


class ScalarMatrix:
    """Immutable dense matrix over a cyclotomic field."""

    __slots__ = ("field", "rows", "cols", "raw")

    def __init__(self, fld: CyclotomicField, raw: Sequence[Sequence[tuple]]):
        self.field = fld
        self.raw = tuple(tuple(r) for r in raw)
        self.rows = len(self.raw)
        self.cols = len(self.raw[0]) if self.rows else 0
        if self.rows == 0 or self.cols == 0:
            raise DimensionMismatch("matrix dimensions must be positive")
        if any(len(r) != self.cols for r in self.raw):
            raise DimensionMismatch("ragged matrix rows")

    @classmethod
    def of(cls, fld: CyclotomicField, entries: Sequence[Sequence]) -> "ScalarMatrix":
        return cls(fld, [[fld.raw_of(x) for x in row] for row in entries])

    @classmethod
    def identity(cls, fld: CyclotomicField, n: int) -> "ScalarMatrix":
        return cls(fld, [[fld.one_raw if i == j else fld.zero_raw for j in range(n)]
                         for i in range(n)])

    @classmethod
    def zeros(cls, fld: CyclotomicField, r: int, c: int) -> "ScalarMatrix":
        return cls(fld, [[fld.zero_raw] * c for _ in range(r)])

    @classmethod
    def diag(cls, fld: CyclotomicField, values: Sequence) -> "ScalarMatrix":
        n = len(values)
        return cls(fld, [[fld.raw_of(values[i]) if i == j else fld.zero_raw for j in range(n)]
                         for i in range(n)])

    @classmethod
    def unit(cls, fld: CyclotomicField, n: int, i: int, j: int) -> "ScalarMatrix":
        return cls(fld, [[fld.one_raw if (a, b) == (i, j) else fld.zero_raw for b in range(n)]
                         for a in range(n)])

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def entries(self) -> list[list[Cyclotomic]]:
        return [[Cyclotomic(self.field, x) for x in r] for r in self.raw]

    def __getitem__(self, ij) -> Cyclotomic:
        i, j = ij
        return Cyclotomic(self.field, self.raw[i][j])

    def _check(self, other: "ScalarMatrix"):
        if other.field is not self.field:
            raise ConductorMismatch(
                f"conductor mismatch: {self.field.n} vs {other.field.n}")

    def __matmul__(self, other: "ScalarMatrix") -> "ScalarMatrix":
        self._check(other)
        if self.cols != other.rows:
            raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
        return ScalarMatrix(self.field, matmul_raw(self.field, self.raw, other.raw))

    def __add__(self, other: "ScalarMatrix") -> "ScalarMatrix":
        self._check(other)
        if self.shape != other.shape:
            raise DimensionMismatch("shape mismatch")
        return ScalarMatrix(self.field, [[K.add(a, b) for a, b in zip(r, s)]
                                         for r, s in zip(self.raw, other.raw)])

    def __sub__(self, other: "ScalarMatrix") -> "ScalarMatrix":
        self._check(other)
        if self.shape != other.shape:
            raise DimensionMismatch("shape mismatch")
        return ScalarMatrix(self.field, [[K.sub(a, b) for a, b in zip(r, s)]
                                         for r, s in zip(self.raw, other.raw)])

    def __neg__(self) -> "ScalarMatrix":
        return ScalarMatrix(self.field, [[K.neg(a) for a in r] for r in self.raw])

    def scale(self, c) -> "ScalarMatrix":
        c = self.field.raw_of(c)
        return ScalarMatrix(self.field, [scale_raw(self.field, c, r) for r in self.raw])

    def __eq__(self, other):
        if not isinstance(other, ScalarMatrix):
            return NotImplemented
        return self.field is other.field and self.raw == other.raw

    def __hash__(self):
        return hash((self.field.n, self.raw))

    def __repr__(self):
        body = "; ".join(", ".join(str(Cyclotomic(self.field, x)) for x in r) for r in self.raw)
        return f"ScalarMatrix(n={self.field.n}, [{body}])"

    @property
    def T(self) -> "ScalarMatrix":
        return ScalarMatrix(self.field, list(zip(*self.raw)))

    def conj(self) -> "ScalarMatrix":
        """Entrywise complex conjugation."""
        return ScalarMatrix(self.field, [[self.field.raw_conj(x) for x in r] for r in self.raw])

    def trace(self) -> Cyclotomic:
        acc = self.field.zero_raw
        for i in range(min(self.rows, self.cols)):
            acc = K.add(acc, self.raw[i][i])
        return Cyclotomic(self.field, acc)

    def rank(self) -> int:
        return len(rref_raw(self.field, self.raw)[1])

    def is_square(self) -> bool:
        return self.rows == self.cols

    def inverse(self) -> "ScalarMatrix":
        if not self.is_square():
            raise DimensionMismatch("only square matrices are invertible")
        inv = inverse_raw(self.field, self.raw)
        if inv is None:
            raise GradeKitError("matrix is singular")
        return ScalarMatrix(self.field, inv)

    def is_invertible(self) -> bool:
        return self.is_square() and self.rank() == self.rows

    def is_diagonal(self) -> bool:
        return all(K.is_zero(x) for i, r in enumerate(self.raw) for j, x in enumerate(r) if i != j)

    def diagonal(self) -> list[Cyclotomic]:
        return [Cyclotomic(self.field, self.raw[i][i]) for i in range(min(self.rows, self.cols))]

    def flat(self) -> tuple:
        return tuple(x for r in self.raw for x in r)

    def is_zero(self) -> bool:
        return all(K.is_zero(x) for r in self.raw for x in r)

    def apply(self, v: Sequence[tuple]) -> list[tuple]:
        """Raw matrix-vector product."""
        return matvec_raw(self.field, self.raw, v)


# ---------------------------------------------------------------------------
# subspaces


class Subspace:
    """Subspace of K^d stored by its reduced row-echelon basis.

    The canonical basis makes equality a plain comparison of rows.
    """

    __slots__ = ("field", "ambient_dim", "rows", "pivots")

    def __init__(self, fld: CyclotomicField, ambient_dim: int, rows, pivots):
        self.field = fld
        self.ambient_dim = ambient_dim
        self.rows = tuple(tuple(r) for r in rows)
        self.pivots = tuple(pivots)

    @classmethod
    def zero(cls, fld: CyclotomicField, ambient_dim: int) -> "Subspace":
        return cls(fld, ambient_dim, (), ())

    @classmethod
    def full(cls, fld: CyclotomicField, ambient_dim: int) -> "Subspace":
        rows = [[fld.one_raw if i == j else fld.zero_raw for j in range(ambient_dim)]
                for i in range(ambient_dim)]
        return cls(fld, ambient_dim, rows, range(ambient_dim))

    @property
    def dim(self) -> int:
        return len(self.rows)

    rank = dim

    @property
    def basis(self) -> list[tuple[Cyclotomic, ...]]:
        return [tuple(Cyclotomic(self.field, x) for x in r) for r in self.rows]

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return (self.field is other.field and self.ambient_dim == other.ambient_dim
                and self.rows == other.rows)

    def __hash__(self):
        return hash((self.ambient_dim, self.rows))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"

    def sort_key(self):
        return (self.dim, tuple(tuple(x for x in r) for r in self.rows))

    def coords(self, v: Sequence[tuple]) -> list[tuple] | None:
        """Coordinates of raw vector v in the canonical basis, or None if v is outside."""
        fld = self.field
        c = [v[p] for p in self.pivots]
        resid = list(v)
        for ci, row in zip(c, self.rows):
            if not K.is_zero(ci):
                resid = axpy_raw(fld, K.neg(ci), row, resid)
        if not is_zero_vec(resid):
            return None
        return c

    def contains_vector(self, v) -> bool:
        return self.coords(v) is not None

    def _check(self, other: "Subspace"):
        if other.field is not self.field:
            raise ConductorMismatch("subspaces over different fields")
        if other.ambient_dim != self.ambient_dim:
            raise DimensionMismatch(
                f"ambient dimensions differ: {self.ambient_dim} vs {other.ambient_dim}")

    def join(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return canonicalize_raw(self.field, self.ambient_dim, self.rows + other.rows)

    def meet(self, other: "Subspace") -> "Subspace":
        self._check(other)
        fld = self.field
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(fld, self.ambient_dim)
        k = self.dim
        cols = list(self.rows) + [[K.neg(x) for x in r] for r in other.rows]
        system = [list(t) for t in zip(*cols)]
        ns = nullspace_raw(fld, system, len(cols))
        vecs = []
        for x in ns:
            acc = [fld.zero_raw] * self.ambient_dim
            for ci, row in zip(x[:k], self.rows):
                if not K.is_zero(ci):
                    acc = axpy_raw(fld, ci, row, acc)
            vecs.append(acc)
        return canonicalize_raw(fld, self.ambient_dim, vecs)

    def contains(self, other: "Subspace") -> bool:
        self._check(other)
        return all(self.contains_vector(r) for r in other.rows)

    def __le__(self, other: "Subspace") -> bool:
        return other.contains(self)


def canonicalize_raw(fld: CyclotomicField, ambient_dim: int, vectors) -> Subspace:
    vectors = [list(v) for v in vectors]
    if any(len(v) != ambient_dim for v in vectors):
        raise DimensionMismatch("vectors of unequal length")
    rows, pivots = K.rref(vectors, fld.red, fld.gal) if vectors else ([], [])
    return Subspace(fld, ambient_dim, rows, pivots)


def canonicalize(vectors: Sequence[Sequence], fld: CyclotomicField | None = None,
                 ambient_dim: int | None = None) -> Subspace:
    """Canonical subspace spanned by vectors of scalars (ints, Fractions or Cyclotomic)."""
    vectors = [list(v) for v in vectors]
    if fld is None:
        for v in vectors:
            for x in v:
                if isinstance(x, Cyclotomic):
                    fld = x.field
                    break
            if fld is not None:
                break
        if fld is None:
            fld = field(1)
    if ambient_dim is None:
        if not vectors:
            raise DimensionMismatch("ambient dimension needed for an empty spanning set")
        ambient_dim = len(vectors[0])
    raw = [[fld.raw_of(x) for x in v] for v in vectors]
    return canonicalize_raw(fld, ambient_dim, raw)


def subspace_meet_join(U: Subspace, V: Subspace, op: str):
    if op == "meet":
        return U.meet(V)
    if op == "join":
        return U.join(V)
    if op == "contains":
        return U.contains(V)
    raise ValueError(f"unknown operation {op!r}")


# ---------------------------------------------------------------------------
# integer matrices


def _identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(A: Sequence[Sequence[int]], ncols: int | None = None):
    """Return (U, S, V) with U A V = S, U and V unimodular, S in Smith form.

    The diagonal of S satisfies d_1 | d_2 | ... and every d_i >= 0.  ``ncols``
    must be given when A has no rows.
    """
    S = [list(map(int, r)) for r in A]
    m = len(S)
    n = len(S[0]) if m else (ncols or 0)
    U = _identity(m)
    V = _identity(n)

    def swap_rows(i, j):
        S[i], S[j] = S[j], S[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in S:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row_dst += q * row_src
        S[dst] = [a + q * b for a, b in zip(S[dst], S[src])]
        U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, q):
        for row in S:
            row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]

    for t in range(min(m, n)):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if S[i][j] and (best is None or abs(S[i][j]) < abs(S[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            p = S[t][t]
            for i in range(t + 1, m):
                if S[i][t]:
                    add_row(i, t, -(S[i][t] // p))
            for j in range(t + 1, n):
                if S[t][j]:
                    add_col(j, t, -(S[t][j] // p))
            rest = [(abs(S[i][t]), i, None) for i in range(t + 1, m) if S[i][t]]
            rest += [(abs(S[t][j]), None, j) for j in range(t + 1, n) if S[t][j]]
            if rest:
                _, i, j = min(rest, key=lambda x: x[0])
                if i is not None:
                    swap_rows(t, i)
                else:
                    swap_cols(t, j)
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if S[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if S[t][t] < 0:
            S[t] = [-x for x in S[t]]
            U[t] = [-x for x in U[t]]
    return U, S, V


def invariant_factors(A: Sequence[Sequence[int]], ncols: int | None = None) -> list[int]:
    """Diagonal of the Smith form, padded with zeros to the column count."""
    _, S, _ = smith_normal_form(A, ncols)
    n = len(S[0]) if S else (ncols or 0)
    return [S[i][i] if i < len(S) else 0 for i in range(n)]
