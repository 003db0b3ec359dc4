"""Real forms given by conjugate-linear involutions J = J0 o h.

J0 conjugates matrix entries.  Complex conjugation on Q(zeta_n) sends zeta
to zeta^-1.  Fixed points are computed over Q by splitting every coordinate
into its rational components, which gives a rational real structure exactly
when the real subfield of the working field is Q, i.e. for conductors with
phi(n) <= 2 (n in 1, 2, 3, 4, 6).
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from gradekit import kernels as K
from gradekit.autos import AlgebraMap, is_automorphism
from gradekit.errors import Inconclusive, RealFormError
from gradekit.exactmath import (
    CyclotomicField,
    ScalarMatrix,
    Subspace,
    canonicalize_raw,
    field,
    is_zero_vec,
    nullspace_raw,
)
from gradekit.gradings import Grading, grade_by, verify_grading
from gradekit.liealg import MatrixLieAlgebra, StructureAlgebra, killing_matrix

__all__ = [
    "AntiAuto",
    "RealLieAlgebra",
    "make_antiauto",
    "fixed_point_form",
    "fundamental_method",
    "real_basis_method",
    "real_killing_signature",
    "killing_inertia",
    "identity_map",
]

QQ = field(1)


def identity_map(L: MatrixLieAlgebra) -> AlgebraMap:
    return AlgebraMap(L, ScalarMatrix.identity(L.field, L.dim), "inner",
                      ScalarMatrix.identity(L.field, L.m))


def _entry_conjugation(L: MatrixLieAlgebra) -> list[list[tuple]]:
    """Coordinate matrix of J0 restricted to L (conjugate-linear part aside)."""
    cols = []
    for a, B in enumerate(L.basis):
        c = L.coords(B.conj())
        if c is None:
            raise RealFormError(
                f"{L.name or 'algebra'} is not closed under entrywise conjugation (basis {a})")
        cols.append(c)
    return [list(r) for r in zip(*cols)]


class AntiAuto:
    """J = J0 o h, acting on raw coordinates by x -> C conj(M x).

    ``C`` is the coordinate matrix of J0 on the basis and ``M`` that of h.
    """

    __slots__ = ("algebra", "h", "C")

    def __init__(self, algebra: MatrixLieAlgebra, h: AlgebraMap, C):
        self.algebra = algebra
        self.h = h
        self.C = C

    def __repr__(self):
        return f"AntiAuto({self.algebra.name}, h={self.h.provenance})"

    def apply(self, x) -> tuple:
        fld = self.algebra.field
        y = [fld.raw_conj(v) for v in self.h.apply(x)]
        out = []
        for row in self.C:
            acc = fld.zero_raw
            for c, v in zip(row, y):
                if not K.is_zero(c) and not K.is_zero(v):
                    acc = K.add(acc, K.mul(c, v, fld.red))
            out.append(acc)
        return tuple(out)

    def is_involutive(self) -> bool:
        L = self.algebra
        return all(self.apply(self.apply(L.unit(a))) == L.unit(a) for a in range(L.dim))

    def preserves_brackets(self) -> bool:
        L = self.algebra
        images = [self.apply(L.unit(a)) for a in range(L.dim)]
        for a in range(L.dim):
            for b in range(a + 1, L.dim):
                if self.apply(L.structure[a][b]) != L.bracket_raw(images[a], images[b]):
                    return False
        return True


def make_antiauto(L: MatrixLieAlgebra, h: AlgebraMap | None = None) -> AntiAuto:
    """Build J = J0 o h and check that it is an involutive real structure."""
    if h is None:
        h = identity_map(L)
    if h.algebra is not L:
        raise RealFormError("h acts on a different algebra")
    if not is_automorphism(h):
        raise RealFormError("h is not an automorphism")
    J = AntiAuto(L, h, _entry_conjugation(L))
    if not J.is_involutive():
        raise RealFormError("J0 o h is not involutive")
    if not J.preserves_brackets():
        raise RealFormError("J0 o h does not preserve brackets")
    return J


# ------------------------------------------------------------ rational split

def _split(fld: CyclotomicField, v) -> list[Fraction]:
    """Rational components of a raw vector, coordinate by coordinate."""
    out = []
    for x in v:
        den = x[0]
        out.extend(Fraction(c, den) for c in x[1:])
    return out


def _to_qq(values) -> list[tuple]:
    return [QQ.raw_of(q) for q in values]


def _join(fld: CyclotomicField, flat) -> tuple:
    """Inverse of ``_split`` for a vector of QQ raw entries."""
    d = fld.degree
    out = []
    for a in range(len(flat) // d):
        parts = [Fraction(x[1], x[0]) for x in flat[a * d:(a + 1) * d]]
        out.append(fld.raw_of(fld.from_coeffs(parts)))
    return tuple(out)


def _check_rational_real_subfield(fld: CyclotomicField):
    if fld.degree > 2:
        raise RealFormError(
            f"conductor {fld.n} has a real subfield larger than Q; "
            "real forms are supported for conductors 1, 2, 3, 4 and 6")


class RealLieAlgebra(StructureAlgebra):
    """Fixed points of J as a Lie algebra over Q with rational structure constants.

    ``complex_basis[i]`` holds the parent coordinates of real basis element i.
    """

    def __init__(self, J: AntiAuto, rows: Sequence, pivots: Sequence[int]):
        L = J.algebra
        self.parent = L
        self.J = J
        self.field = QQ
        self.dim = len(rows)
        self.name = f"{L.name}^J" if L.name else "real form"
        self._rows = tuple(tuple(r) for r in rows)
        self._pivots = tuple(pivots)
        self.complex_basis = tuple(_join(L.field, r) for r in self._rows)
        N = self.dim
        zero = tuple([QQ.zero_raw] * N)
        table = [[zero] * N for _ in range(N)]
        for a in range(N):
            for b in range(a + 1, N):
                c = self.real_coords(L.bracket_raw(self.complex_basis[a], self.complex_basis[b]))
                if c is None:
                    raise RealFormError("fixed space is not closed under the bracket")
                table[a][b] = c
                table[b][a] = tuple(K.neg(x) for x in c)
        self._set_structure(table)

    def __repr__(self):
        return f"RealLieAlgebra({self.name}, dim={self.dim})"

    def real_coords(self, v) -> tuple | None:
        """Rational coordinates of a parent vector, or None if it is not fixed."""
        flat = _to_qq(_split(self.parent.field, v))
        c = [flat[p] for p in self._pivots]
        resid = list(flat)
        for ci, row in zip(c, self._rows):
            if not K.is_zero(ci):
                resid = [K.sub(r, K.mul(ci, x, QQ.red)) if not K.is_zero(x) else r
                         for r, x in zip(resid, row)]
        if not is_zero_vec(resid):
            return None
        return tuple(c)

    def matrices(self) -> list[ScalarMatrix]:
        return [self.parent.matrix_of(v) for v in self.complex_basis]

    def complexify(self, S: Subspace) -> Subspace:
        """Complex span, in parent coordinates, of a subspace of this algebra."""
        L = self.parent
        vecs = []
        for t in S.rows:
            acc = [L.field.zero_raw] * L.dim
            for ti, u in zip(t, self.complex_basis):
                if K.is_zero(ti):
                    continue
                c = L.field.raw_of(Fraction(ti[1], ti[0]))
                acc = [K.add(a, K.mul(c, x, L.field.red)) for a, x in zip(acc, u)]
            vecs.append(acc)
        return canonicalize_raw(L.field, L.dim, vecs)


def _fixed_rational_space(J: AntiAuto):
    L = J.algebra
    fld = L.field
    _check_rational_real_subfield(fld)
    d = fld.degree
    cols = []
    for a in range(L.dim):
        for c in range(d):
            coeffs = [0] * d
            coeffs[c] = 1
            x = [fld.zero_raw] * L.dim
            x[a] = fld.raw_of(fld.from_coeffs(coeffs))
            img = _split(fld, J.apply(x))
            src = _split(fld, x)
            cols.append([p - q for p, q in zip(img, src)])
    system = [_to_qq(r) for r in zip(*cols)]
    basis = nullspace_raw(QQ, system, L.dim * d)
    S = canonicalize_raw(QQ, L.dim * d, basis)
    return S.rows, S.pivots


def fixed_point_form(J: AntiAuto) -> RealLieAlgebra:
    """The real form {X : J(X) = X} with rational structure constants."""
    rows, pivots = _fixed_rational_space(J)
    if len(rows) != J.algebra.dim:
        raise RealFormError(
            f"fixed space has rational dimension {len(rows)}, expected {J.algebra.dim}; "
            "the working field may lack the square roots of -1 this form needs")
    return RealLieAlgebra(J, rows, pivots)


# ----------------------------------------------------------------- Killing

def killing_inertia(R: StructureAlgebra) -> tuple[int, int, int]:
    """(positive, negative, radical) counts of the Killing form of a rational algebra."""
    G = killing_matrix(R)
    if G.field.degree != 1:
        raise RealFormError("Killing inertia needs rational structure constants")
    A = [[Fraction(x[1], x[0]) for x in row] for row in G.raw]
    return _inertia(A)


def _inertia(A: list[list[Fraction]]) -> tuple[int, int, int]:
    """Sylvester inertia of a symmetric rational matrix by completing squares."""
    A = [row[:] for row in A]
    n = len(A)
    live = list(range(n))
    pos = neg = 0
    while live:
        k = next((i for i in live if A[i][i] != 0), None)
        if k is None:
            pair = next(((i, j) for i in live for j in live if i != j and A[i][j] != 0), None)
            if pair is None:
                break
            i, j = pair
            # e_i -> e_i + e_j makes the diagonal entry 2 A[i][j]
            for t in range(n):
                A[i][t] += A[j][t]
            for t in range(n):
                A[t][i] += A[t][j]
            k = i
        p = A[k][k]
        if p > 0:
            pos += 1
        else:
            neg += 1
        live.remove(k)
        for r in live:
            f = A[r][k] / p
            if f:
                for s in live:
                    A[r][s] -= f * A[k][s]
        for r in live:
            A[r][k] = A[k][r] = Fraction(0)
    return pos, neg, n - pos - neg


def real_killing_signature(R: StructureAlgebra) -> tuple[int, int]:
    """(p, q) inertia of the Killing form; raises on a degenerate form."""
    p, q, z = killing_inertia(R)
    if z:
        raise RealFormError(f"Killing form is degenerate with radical of dimension {z}")
    return p, q


# -------------------------------------------------------- grading transfer

def _annihilator(fld, S: Subspace, n: int) -> list[list[tuple]]:
    return nullspace_raw(fld, [list(r) for r in S.rows], n)


def _real_part_of(R: RealLieAlgebra, S: Subspace) -> Subspace:
    """Real subspace of R whose elements lie in the complex subspace S."""
    L = R.parent
    fld = L.field
    rows = []
    for w in _annihilator(fld, S, L.dim):
        vals = []
        for u in R.complex_basis:
            acc = fld.zero_raw
            for x, y in zip(w, u):
                if not K.is_zero(x) and not K.is_zero(y):
                    acc = K.add(acc, K.mul(x, y, fld.red))
            vals.append(_split(fld, [acc]))
        for c in range(fld.degree):
            rows.append(_to_qq(v[c] for v in vals))
    if not rows:
        return R.full_space()
    return canonicalize_raw(QQ, R.dim, nullspace_raw(QQ, rows, R.dim))


def fundamental_method(G: Grading, J: AntiAuto) -> Grading | None:
    """Real grading of the J-fixed form from J-fixed bases of each part of G.

    Returns None when some part has too few J-fixed vectors.
    """
    if G.algebra is not J.algebra:
        raise RealFormError("grading and J live on different algebras")
    R = fixed_point_form(J)
    subs = []
    for S in G.subspaces:
        W = _real_part_of(R, S)
        if W.dim != S.dim:
            return None
        subs.append(W)
    H = Grading(R, subs, G.labels)
    rep = verify_grading(H)
    if not rep.ok:
        raise RealFormError("real decomposition fails verification: " + "; ".join(rep.violations))
    return H


def _involutive(L: MatrixLieAlgebra, h: AlgebraMap) -> bool:
    return AntiAuto(L, h, _entry_conjugation(L)).is_involutive()


def real_basis_method(gens: Sequence[AlgebraMap], h: AlgebraMap,
                      order_bound: int = 4096) -> bool:
    """Decide whether h lies in the finite group generated by ``gens``.

    The grading by ``gens`` must admit a basis of real matrices.  An h for
    which J0 o h is not involutive defines no real form and gives False.
    Raises ``Inconclusive`` when the closure exceeds ``order_bound`` elements.
    """
    gens = list(gens)
    if not gens:
        raise RealFormError("at least one generator is required")
    L = gens[0].algebra
    if h.algebra is not L:
        raise RealFormError("h acts on a different algebra")
    G = grade_by(L, gens)
    if fundamental_method(G, make_antiauto(L)) is None:
        raise RealFormError("the grading by these generators has no basis of real matrices")
    if not _involutive(L, h):
        return False
    ident = ScalarMatrix.identity(L.field, L.dim)
    seen = {ident}
    frontier = [ident]
    mats = [g.matrix for g in gens]
    while frontier:
        nxt = []
        for X in frontier:
            for M in mats:
                Y = M @ X
                if Y not in seen:
                    seen.add(Y)
                    nxt.append(Y)
                    if len(seen) > order_bound:
                        raise Inconclusive(
                            f"generated group has more than {order_bound} elements")
        frontier = nxt
    return h.matrix in seen
