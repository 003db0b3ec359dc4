"""Matrix Lie algebras with exact structure constants.

Algebras are given by an ordered basis of m x m matrices over Q(zeta_n).
Coordinates of a matrix in that basis are recovered through a fixed set of
pivot entries, so extracting them costs one small matrix-vector product.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from gradekit import kernels as K
from gradekit.errors import AlgebraError, DimensionMismatch
from gradekit.exactmath import (
    CyclotomicField,
    Cyclotomic,
    ScalarMatrix,
    Subspace,
    axpy_raw,
    canonicalize_raw,
    field,
    inverse_raw,
    is_zero_vec,
    matmul_raw,
    nullspace_raw,
    rref_raw,
)

__all__ = [
    "StructureAlgebra",
    "MatrixLieAlgebra",
    "Element",
    "make_sl",
    "make_orthogonal",
    "make_symplectic",
    "bracket",
    "killing_matrix",
    "ideal_decomposition",
    "jacobi_holds",
]


class StructureAlgebra:
    """Bracket machinery shared by every algebra with known structure constants.

    Subclasses set ``field``, ``dim``, ``name`` and call ``_set_structure``
    with the full table of raw coordinate vectors [X_a, X_b].
    """

    def _set_structure(self, table):
        N = self.dim
        self.structure = tuple(tuple(tuple(c) for c in r) for r in table)
        # sparse form: list of (d, coefficient) for each pair
        self._sparse = [[[(d, x) for d, x in enumerate(self.structure[a][b]) if not K.is_zero(x)]
                         for b in range(N)] for a in range(N)]
        self._ad = None
        self._killing = None

    def bracket_raw(self, x, y) -> tuple:
        """Raw coordinates of [x, y] from raw coordinate vectors."""
        fld = self.field
        red = fld.red
        acc = [fld.zero_raw] * self.dim
        xs = [(a, c) for a, c in enumerate(x) if not K.is_zero(c)]
        ys = [(b, c) for b, c in enumerate(y) if not K.is_zero(c)]
        for a, xa in xs:
            row = self._sparse[a]
            for b, yb in ys:
                terms = row[b]
                if not terms:
                    continue
                f = K.mul(xa, yb, red)
                for d, cab in terms:
                    acc[d] = K.add(acc[d], K.mul(f, cab, red))
        return tuple(acc)

    def unit(self, a: int) -> tuple:
        fld = self.field
        return tuple(fld.one_raw if i == a else fld.zero_raw for i in range(self.dim))

    def ad(self, a: int) -> list[list[tuple]]:
        """Raw matrix of ad(X_a) in the basis (column b = [X_a, X_b])."""
        if self._ad is None:
            N = self.dim
            self._ad = [[[self.structure[a][b][d] for b in range(N)] for d in range(N)]
                        for a in range(N)]
        return self._ad[a]

    def ad_of(self, x) -> list[list[tuple]]:
        cols = [self.bracket_raw(x, self.unit(b)) for b in range(self.dim)]
        return [list(r) for r in zip(*cols)]

    def full_space(self) -> Subspace:
        return Subspace.full(self.field, self.dim)


class MatrixLieAlgebra(StructureAlgebra):
    """A Lie algebra spanned by an ordered list of square matrices.

    Parameters
    ----------
    basis : sequence of ScalarMatrix
        Linearly independent m x m matrices closed under the commutator.
    name : str
        Display tag such as ``"sl(4)"``.
    parent, inclusion :
        For subalgebras, the containing algebra and the coordinates of each
        basis element in the parent's basis.
    """

    def __init__(self, basis: Sequence[ScalarMatrix], name: str = "",
                 parent: "MatrixLieAlgebra | None" = None, inclusion=None):
        if not basis:
            raise AlgebraError("an algebra needs at least one basis matrix")
        self.field: CyclotomicField = basis[0].field
        self.m = basis[0].rows
        for b in basis:
            if b.field is not self.field:
                raise AlgebraError("basis matrices over different fields")
            if b.shape != (self.m, self.m):
                raise AlgebraError("basis matrices must all be m x m")
        self.basis = tuple(basis)
        self.dim = len(self.basis)
        self.name = name
        self.parent = parent
        self.inclusion = None if inclusion is None else tuple(tuple(r) for r in inclusion)
        self.recipe = ("basis",)
        self._flat = [b.flat() for b in self.basis]
        _, pivots = rref_raw(self.field, self._flat)
        if len(pivots) != self.dim:
            raise AlgebraError("basis matrices are linearly dependent")
        self._pivots = pivots
        square = [[row[p] for p in pivots] for row in self._flat]
        self._coord_inv = inverse_raw(self.field, square)
        self._structure_constants()

    def __repr__(self):
        return f"MatrixLieAlgebra({self.name or '?'}, dim={self.dim}, m={self.m}, n={self.field.n})"

    @property
    def conductor(self) -> int:
        return self.field.n

    # -- coordinates --------------------------------------------------------
    def coords(self, X: ScalarMatrix, check: bool = True) -> tuple | None:
        """Raw coordinates of X in the basis; None when X is not in the span."""
        flat = X.flat()
        return self._coords_flat(flat, check)

    def _coords_flat(self, flat, check=True):
        fld = self.field
        picked = [flat[p] for p in self._pivots]
        c = [fld.zero_raw] * self.dim
        for x, row in zip(picked, self._coord_inv):
            if not K.is_zero(x):
                c = axpy_raw(fld, x, row, c)
        if check:
            resid = list(flat)
            for ci, brow in zip(c, self._flat):
                if not K.is_zero(ci):
                    resid = axpy_raw(fld, K.neg(ci), brow, resid)
            if not is_zero_vec(resid):
                return None
        return tuple(c)

    def matrix_of(self, coords) -> ScalarMatrix:
        """The matrix sum_a coords[a] * basis[a]."""
        fld = self.field
        acc = [fld.zero_raw] * (self.m * self.m)
        for c, brow in zip(coords, self._flat):
            if not K.is_zero(c):
                acc = axpy_raw(fld, c, brow, acc)
        m = self.m
        return ScalarMatrix(fld, [acc[i * m:(i + 1) * m] for i in range(m)])

    def contains_matrix(self, X: ScalarMatrix) -> bool:
        return self.coords(X) is not None

    def element(self, coords) -> "Element":
        return Element(self, tuple(self.field.raw_of(c) for c in coords))

    def basis_element(self, a: int) -> "Element":
        fld = self.field
        return Element(self, tuple(fld.one_raw if i == a else fld.zero_raw
                                   for i in range(self.dim)))

    def element_of(self, X: ScalarMatrix) -> "Element":
        c = self.coords(X)
        if c is None:
            raise AlgebraError(f"matrix does not lie in {self.name or 'the algebra'}")
        return Element(self, c)

    # -- structure ----------------------------------------------------------
    def _structure_constants(self):
        N = self.dim
        zero_vec = tuple([self.field.zero_raw] * N)
        table = [[zero_vec] * N for _ in range(N)]
        for a in range(N):
            A = self.basis[a]
            for b in range(a + 1, N):
                B = self.basis[b]
                C = A @ B - B @ A
                c = self.coords(C)
                if c is None:
                    raise AlgebraError(
                        f"basis is not closed under the bracket: [X_{a}, X_{b}] leaves the span")
                table[a][b] = c
                table[b][a] = tuple(K.neg(x) for x in c)
        self._set_structure(table)


class Element:
    """An element of a MatrixLieAlgebra, stored by its raw coordinates."""

    __slots__ = ("algebra", "coords")

    def __init__(self, algebra: MatrixLieAlgebra, coords: tuple):
        if len(coords) != algebra.dim:
            raise DimensionMismatch(
                f"expected {algebra.dim} coordinates, got {len(coords)}")
        self.algebra = algebra
        self.coords = tuple(coords)

    def _same(self, other: "Element"):
        if other.algebra is not self.algebra:
            raise AlgebraError("elements belong to different algebras")

    def __add__(self, other: "Element") -> "Element":
        self._same(other)
        return Element(self.algebra, tuple(K.add(a, b) for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "Element") -> "Element":
        self._same(other)
        return Element(self.algebra, tuple(K.sub(a, b) for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "Element":
        return Element(self.algebra, tuple(K.neg(a) for a in self.coords))

    def __rmul__(self, c) -> "Element":
        fld = self.algebra.field
        c = fld.raw_of(c)
        return Element(self.algebra, tuple(K.mul(c, a, fld.red) for a in self.coords))

    def __eq__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return self.algebra is other.algebra and self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def is_zero(self) -> bool:
        return is_zero_vec(self.coords)

    def matrix(self) -> ScalarMatrix:
        return self.algebra.matrix_of(self.coords)

    def values(self) -> tuple[Cyclotomic, ...]:
        return tuple(Cyclotomic(self.algebra.field, c) for c in self.coords)

    def __repr__(self):
        return f"Element({', '.join(str(v) for v in self.values())})"


def bracket(x: Element, y: Element) -> Element:
    """[x, y] = xy - yx, expanded over the basis."""
    x._same(y)
    return Element(x.algebra, x.algebra.bracket_raw(x.coords, y.coords))


# ---------------------------------------------------------------------------
# constructors


def make_sl(m: int, conductor: int = 4) -> MatrixLieAlgebra:
    """Traceless m x m matrices.

    Basis order: diagonal differences E_ii - E_{i+1,i+1}, then the
    off-diagonal units E_ij in row-major order.  For m = 2 this is (H, E, F).
    """
    if not isinstance(m, int) or m < 2:
        raise AlgebraError("sl(m) needs m >= 2")
    return _make_sl(m, int(conductor))


@lru_cache(maxsize=64)
def _make_sl(m: int, conductor: int) -> MatrixLieAlgebra:
    fld = field(conductor)
    basis = []
    for i in range(m - 1):
        basis.append(ScalarMatrix.diag(fld, [1 if k == i else -1 if k == i + 1 else 0
                                             for k in range(m)]))
    for i in range(m):
        for j in range(m):
            if i != j:
                basis.append(ScalarMatrix.unit(fld, m, i, j))
    L = MatrixLieAlgebra(basis, name=f"sl({m})")
    L.recipe = ("sl", m)
    return L


def _form_algebra(Kmat: ScalarMatrix, sign: int, tag: str) -> MatrixLieAlgebra:
    fld = Kmat.field
    if not Kmat.is_square():
        raise AlgebraError("K must be square")
    m = Kmat.rows
    if sign == 1 and Kmat.T != Kmat:
        raise AlgebraError("orthogonal algebras need K = K^T")
    if sign == -1 and Kmat.T != -Kmat:
        raise AlgebraError("symplectic algebras need K = -K^T")
    if not Kmat.is_invertible():
        raise AlgebraError("K is singular")
    Kr = Kmat.raw
    # (X^T K + K X)_{ij} = sum_k X_ki K_kj + K_ik X_kj, variables x_kl at k*m + l
    rows = []
    for i in range(m):
        for j in range(m):
            row = [fld.zero_raw] * (m * m)
            for k in range(m):
                if not K.is_zero(Kr[k][j]):
                    row[k * m + i] = K.add(row[k * m + i], Kr[k][j])
                if not K.is_zero(Kr[i][k]):
                    row[k * m + j] = K.add(row[k * m + j], Kr[i][k])
            rows.append(row)
    sols = nullspace_raw(fld, rows, m * m)
    basis = [ScalarMatrix(fld, [v[i * m:(i + 1) * m] for i in range(m)]) for v in sols]
    L = MatrixLieAlgebra(basis, name=f"{tag}_K({m})")
    L.recipe = (tag, Kmat)
    return L


@lru_cache(maxsize=64)
def make_orthogonal(Kmat: ScalarMatrix) -> MatrixLieAlgebra:
    """o_K(m) = {X : X^T K + K X = 0} for symmetric invertible K."""
    return _form_algebra(Kmat, 1, "o")


@lru_cache(maxsize=64)
def make_symplectic(Kmat: ScalarMatrix) -> MatrixLieAlgebra:
    """sp_K(m) = {X : X^T K + K X = 0} for antisymmetric invertible K."""
    return _form_algebra(Kmat, -1, "sp")


# ---------------------------------------------------------------------------
# invariants


def killing_matrix(L: StructureAlgebra) -> ScalarMatrix:
    """Gram matrix of B(X_a, X_b) = tr(ad X_a ad X_b)."""
    if L._killing is None:
        fld = L.field
        N = L.dim
        ads = [L.ad(a) for a in range(N)]
        gram = [[fld.zero_raw] * N for _ in range(N)]
        for a in range(N):
            for b in range(a, N):
                acc = fld.zero_raw
                A, B = ads[a], ads[b]
                for d in range(N):
                    Ad = A[d]
                    for e in range(N):
                        x = Ad[e]
                        if K.is_zero(x):
                            continue
                        y = B[e][d]
                        if not K.is_zero(y):
                            acc = K.add(acc, K.mul(x, y, fld.red))
                gram[a][b] = gram[b][a] = acc
        L._killing = ScalarMatrix(fld, gram)
    return L._killing


def jacobi_holds(L: StructureAlgebra) -> bool:
    """Check the Jacobi identity on every triple of basis elements."""
    N = L.dim
    e = [L.unit(a) for a in range(N)]
    for a in range(N):
        for b in range(a + 1, N):
            ab = L.structure[a][b]
            for c in range(b + 1, N):
                t1 = L.bracket_raw(ab, e[c])
                t2 = L.bracket_raw(L.structure[b][c], e[a])
                t3 = L.bracket_raw(L.structure[c][a], e[b])
                if not is_zero_vec([K.add(K.add(x, y), z) for x, y, z in zip(t1, t2, t3)]):
                    return False
    return True


def closure_holds(L: MatrixLieAlgebra) -> bool:
    """Every [X_a, X_b] re-expands exactly in the basis."""
    for a in range(L.dim):
        for b in range(L.dim):
            X = L.basis[a] @ L.basis[b] - L.basis[b] @ L.basis[a]
            if L.matrix_of(L.structure[a][b]) != X:
                return False
    return True


# ---------------------------------------------------------------------------
# simple ideals


def _generated_subalgebra(L: MatrixLieAlgebra, vectors) -> Subspace:
    fld = L.field
    S = canonicalize_raw(fld, L.dim, vectors)
    while True:
        rows = list(S.rows)
        new = [L.bracket_raw(rows[i], rows[j])
               for i in range(len(rows)) for j in range(i + 1, len(rows))]
        T = canonicalize_raw(fld, L.dim, rows + new)
        if T.dim == S.dim:
            return S
        S = T


def _generators(L: MatrixLieAlgebra) -> list[int]:
    gens: list[int] = []
    S = Subspace.zero(L.field, L.dim)
    for a in range(L.dim):
        e = L.basis_element(a).coords
        if S.contains_vector(e):
            continue
        gens.append(a)
        S = _generated_subalgebra(L, [L.basis_element(g).coords for g in gens])
        if S.dim == L.dim:
            break
    return gens


def centroid(L: MatrixLieAlgebra) -> list[list[list[tuple]]]:
    """Basis of the operators T with T ad(x) = ad(x) T for all x."""
    fld = L.field
    N = L.dim
    rows = []
    for g in _generators(L):
        A = L.ad(g)
        # (T A - A T)_{ij} = sum_k T_ik A_kj - A_ik T_kj, unknown T_ik at i*N + k
        for i in range(N):
            for j in range(N):
                row = {}
                for k in range(N):
                    x = A[k][j]
                    if not K.is_zero(x):
                        idx = i * N + k
                        row[idx] = K.add(row.get(idx, fld.zero_raw), x)
                    y = A[i][k]
                    if not K.is_zero(y):
                        idx = k * N + j
                        row[idx] = K.sub(row.get(idx, fld.zero_raw), y)
                if any(not K.is_zero(v) for v in row.values()):
                    dense = [fld.zero_raw] * (N * N)
                    for idx, v in row.items():
                        dense[idx] = v
                    rows.append(dense)
    sols = nullspace_raw(fld, rows, N * N)
    return [[v[i * N:(i + 1) * N] for i in range(N)] for v in sols]


def _rational_roots(coeffs: list[Fraction]) -> list[Fraction]:
    """Rational roots of sum coeffs[k] x^k (rational root theorem)."""
    from math import lcm
    den = 1
    for c in coeffs:
        den = lcm(den, c.denominator)
    ints = [int(c * den) for c in coeffs]
    while ints and ints[0] == 0:
        ints.pop(0)
    roots = [Fraction(0)] if len(ints) < len(coeffs) else []
    if len(ints) <= 1:
        return roots
    a0, an = abs(ints[0]), abs(ints[-1])

    def divisors(x):
        return [d for d in range(1, x + 1) if x % d == 0]

    for p in divisors(a0):
        for q in divisors(an):
            for r in (Fraction(p, q), Fraction(-p, q)):
                if r in roots:
                    continue
                if sum(c * r ** k for k, c in enumerate(ints)) == 0:
                    roots.append(r)
    return roots


def _split_off(L: MatrixLieAlgebra) -> Subspace | None:
    """A proper nonzero ideal of L (in L's coordinates), or None if L is simple."""
    fld = L.field
    N = L.dim
    C = centroid(L)
    if len(C) <= 1:
        return None
    ident = [[fld.one_raw if i == j else fld.zero_raw for j in range(N)] for i in range(N)]
    for T in C:
        powers = [ident]
        while True:
            powers.append(matmul_raw(fld, powers[-1], T))
            cols = [[x for r in P for x in r] for P in powers]
            system = [list(t) for t in zip(*cols)]
            ns = nullspace_raw(fld, system, len(powers))
            if ns:
                poly = ns[0]
                break
        if len(poly) <= 2:
            continue  # T is scalar
        if any(any(x[2:]) for x in poly):
            continue
        coeffs = [Fraction(x[1], x[0]) for x in poly]
        for lam in _rational_roots(coeffs):
            shifted = [[K.sub(T[i][j], fld.raw_of(lam)) if i == j else T[i][j]
                        for j in range(N)] for i in range(N)]
            ker = nullspace_raw(fld, shifted, N)
            if 0 < len(ker) < N:
                return canonicalize_raw(fld, N, ker)
    raise AlgebraError("could not split the centroid over the rationals")


def _subalgebra(L: MatrixLieAlgebra, S: Subspace, name: str) -> MatrixLieAlgebra:
    basis = [L.matrix_of(r) for r in S.rows]
    return MatrixLieAlgebra(basis, name=name, parent=L, inclusion=S.rows)




def ideal_decomposition(L: MatrixLieAlgebra) -> list[MatrixLieAlgebra]:
    """Simple ideals of a semisimple algebra, each with an induced basis.

    Each returned ideal has ``parent = L`` and ``inclusion`` giving its basis
    in L's coordinates.  Ideals are ordered by their canonical subspaces.
    """
    fld = L.field
    if killing_matrix(L).rank() != L.dim:
        raise AlgebraError("Killing form is degenerate; algebra is not semisimple")
    pieces = []
    stack = [Subspace.full(fld, L.dim)]
    while stack:
        S = stack.pop()
        sub = L if S.dim == L.dim else _subalgebra(L, S, "")
        I = _split_off(sub)
        if I is None:
            pieces.append(S)
            continue
        # I in sub coordinates; lift to L, then take the Killing complement inside S
        lifted = [_lift(sub, r) for r in I.rows]
        Ibig = canonicalize_raw(fld, L.dim, lifted)
        B = killing_matrix(L).raw
        # y in S with B(x, y) = 0 for x in I: y = sum t_k s_k
        srows = S.rows
        eqs = []
        for x in Ibig.rows:
            xB = [_dot(fld, x, [B[a][b] for a in range(L.dim)]) for b in range(L.dim)]
            eqs.append([_dot(fld, xB, s) for s in srows])
        ts = nullspace_raw(fld, eqs, len(srows))
        comp = []
        for t in ts:
            acc = [fld.zero_raw] * L.dim
            for tk, s in zip(t, srows):
                if not K.is_zero(tk):
                    acc = axpy_raw(fld, tk, s, acc)
            comp.append(acc)
        stack.append(Ibig)
        stack.append(canonicalize_raw(fld, L.dim, comp))
    pieces.sort(key=lambda s: s.sort_key())
    return [_subalgebra(L, S, f"{L.name}[{k}]" if L.name else f"ideal[{k}]")
            for k, S in enumerate(pieces)]


def _lift(sub: MatrixLieAlgebra, v):
    if sub.parent is None:
        return tuple(v)
    fld = sub.field
    acc = [fld.zero_raw] * sub.parent.dim
    for c, row in zip(v, sub.inclusion):
        if not K.is_zero(c):
            acc = axpy_raw(fld, c, row, acc)
    return tuple(acc)


def _dot(fld, u, v):
    acc = fld.zero_raw
    for x, y in zip(u, v):
        if not K.is_zero(x) and not K.is_zero(y):
            acc = K.add(acc, K.mul(x, y, fld.red))
    return acc
