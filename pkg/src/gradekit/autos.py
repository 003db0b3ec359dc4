"""Automorphisms of matrix Lie algebras as coordinate operators."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from gradekit import kernels as K
from gradekit.errors import AutomorphismError
from gradekit.exactmath import (
    Cyclotomic,
    ScalarMatrix,
    Subspace,
    canonicalize_raw,
    inverse_raw,
    is_zero_vec,
    matmul_raw,
    nullspace_raw,
)
from gradekit.liealg import MatrixLieAlgebra

__all__ = [
    "AlgebraMap",
    "EigenReport",
    "inner_auto",
    "outer_auto",
    "diagonal_map",
    "is_automorphism",
    "commute",
    "eigenspaces",
    "default_candidates",
]


class AlgebraMap:
    """Linear operator on an algebra, acting on column coordinate vectors.

    ``provenance`` is one of ``inner``, ``outer``, ``composite``,
    ``scaling`` or ``user``; ``defining`` holds A (inner) or K (outer).
    """

    __slots__ = ("algebra", "matrix", "provenance", "defining")

    def __init__(self, algebra: MatrixLieAlgebra, matrix: ScalarMatrix,
                 provenance: str = "user", defining: ScalarMatrix | None = None):
        if matrix.shape != (algebra.dim, algebra.dim):
            raise AutomorphismError(
                f"map matrix must be {algebra.dim} x {algebra.dim}, got {matrix.shape}")
        if matrix.field is not algebra.field:
            raise AutomorphismError("map and algebra use different conductors")
        self.algebra = algebra
        self.matrix = matrix
        self.provenance = provenance
        self.defining = defining

    def __repr__(self):
        return f"AlgebraMap({self.provenance}, {self.algebra.name})"

    def apply(self, coords) -> tuple:
        return tuple(self.matrix.apply(coords))

    def __call__(self, x):
        from gradekit.liealg import Element
        if isinstance(x, Element):
            return Element(self.algebra, self.apply(x.coords))
        return self.apply(x)

    def compose(self, other: "AlgebraMap") -> "AlgebraMap":
        """self o other."""
        if other.algebra is not self.algebra:
            raise AutomorphismError("maps act on different algebras")
        return AlgebraMap(self.algebra, self.matrix @ other.matrix, "composite")

    def __matmul__(self, other):
        return self.compose(other)

    def inverse(self) -> "AlgebraMap":
        return AlgebraMap(self.algebra, self.matrix.inverse(), "composite")

    def is_identity(self) -> bool:
        return self.matrix == ScalarMatrix.identity(self.algebra.field, self.algebra.dim)

    def __eq__(self, other):
        if not isinstance(other, AlgebraMap):
            return NotImplemented
        return self.algebra is other.algebra and self.matrix == other.matrix

    def __hash__(self):
        return hash(self.matrix)


def _conjugation_map(L: MatrixLieAlgebra, image, provenance, defining) -> AlgebraMap:
    cols = []
    for a, B in enumerate(L.basis):
        c = L.coords(image(B))
        if c is None:
            raise AutomorphismError(
                f"{provenance} map sends basis element {a} outside {L.name or 'the algebra'}")
        cols.append(c)
    M = ScalarMatrix(L.field, [list(r) for r in zip(*cols)])
    return AlgebraMap(L, M, provenance, defining)


def inner_auto(L: MatrixLieAlgebra, A: ScalarMatrix) -> AlgebraMap:
    """Ad_A : X -> A X A^-1."""
    if A.field is not L.field:
        raise AutomorphismError("A and the algebra use different conductors")
    if A.shape != (L.m, L.m):
        raise AutomorphismError(f"A must be {L.m} x {L.m}")
    if not A.is_invertible():
        raise AutomorphismError("A is singular")
    Ainv = A.inverse()
    return _conjugation_map(L, lambda X: A @ X @ Ainv, "inner", A)


def outer_auto(L: MatrixLieAlgebra, Kmat: ScalarMatrix) -> AlgebraMap:
    """Out_K : X -> -K^-1 X^T K.

    For every K with K^2 = +-1 (all standard choices) this equals
    X -> -K X^T K^-1; its +1 eigenspace is o_K(m) or sp_K(m).
    """
    if Kmat.field is not L.field:
        raise AutomorphismError("K and the algebra use different conductors")
    if Kmat.shape != (L.m, L.m):
        raise AutomorphismError(f"K must be {L.m} x {L.m}")
    if not Kmat.is_invertible():
        raise AutomorphismError("K is singular")
    if Kmat.T != Kmat and Kmat.T != -Kmat:
        raise AutomorphismError("K must be symmetric or antisymmetric")
    Kinv = Kmat.inverse()
    return _conjugation_map(L, lambda X: -(Kinv @ X.T @ Kmat), "outer", Kmat)


def diagonal_map(L: MatrixLieAlgebra, subspaces: Sequence[Subspace],
                 values: Sequence[Cyclotomic]) -> AlgebraMap:
    """The map acting as values[j] * Id on subspaces[j] (a direct sum of L)."""
    fld = L.field
    cols = [r for S in subspaces for r in S.rows]
    if len(cols) != L.dim:
        raise AutomorphismError("subspaces do not form a direct sum of the algebra")
    Bm = [list(r) for r in zip(*cols)]
    Binv = inverse_raw(fld, Bm)
    if Binv is None:
        raise AutomorphismError("subspaces do not form a direct sum of the algebra")
    diag = []
    for S, v in zip(subspaces, values):
        diag.extend([fld.raw_of(v)] * S.dim)
    scaled = [[K.mul(x, diag[j], fld.red) if not K.is_zero(x) else x
               for j, x in enumerate(row)] for row in Bm]
    M = matmul_raw(fld, scaled, Binv)
    return AlgebraMap(L, ScalarMatrix(fld, M), "scaling")


def is_automorphism(g: AlgebraMap) -> bool:
    """g[X_a, X_b] = [g X_a, g X_b] on all basis pairs, and g invertible."""
    L = g.algebra
    if not g.matrix.is_invertible():
        return False
    cols = [tuple(c) for c in zip(*g.matrix.raw)]
    for a in range(L.dim):
        for b in range(a + 1, L.dim):
            lhs = g.apply(L.structure[a][b])
            rhs = L.bracket_raw(cols[a], cols[b])
            if lhs != rhs:
                return False
    return True


def commute(g: AlgebraMap, h: AlgebraMap) -> bool:
    if g.algebra is not h.algebra:
        raise AutomorphismError("maps act on different algebras")
    return g.matrix @ h.matrix == h.matrix @ g.matrix


@dataclass(frozen=True)
class EigenReport:
    """Eigenspaces found among the candidate eigenvalues."""

    pairs: tuple[tuple[Cyclotomic, Subspace], ...]
    resolved: bool

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(S.dim for _, S in self.pairs)

    @property
    def eigenvalues(self) -> tuple[Cyclotomic, ...]:
        return tuple(v for v, _ in self.pairs)


def _dedupe(values: Iterable[Cyclotomic]) -> list[Cyclotomic]:
    seen = set()
    out = []
    for v in values:
        if v.raw not in seen:
            seen.add(v.raw)
            out.append(v)
    return out


def restricted_eigenspace(g: AlgebraMap, lam, within: Subspace) -> Subspace:
    """{x in within : g x = lam x}."""
    L = g.algebra
    fld = L.field
    lam = fld.raw_of(lam)
    rows = within.rows
    if not rows:
        return within
    # columns (g - lam) w_k; solve sum t_k col_k = 0
    cols = []
    for w in rows:
        gw = g.apply(w)
        cols.append([K.sub(x, K.mul(lam, y, fld.red)) if not K.is_zero(y) else x
                     for x, y in zip(gw, w)])
    system = [list(t) for t in zip(*cols)]
    ts = nullspace_raw(fld, system, len(rows))
    vecs = []
    for t in ts:
        acc = [fld.zero_raw] * L.dim
        for tk, w in zip(t, rows):
            if not K.is_zero(tk):
                acc = [K.add(a, K.mul(tk, b, fld.red)) if not K.is_zero(b) else a
                       for a, b in zip(acc, w)]
        vecs.append(acc)
    return canonicalize_raw(fld, L.dim, vecs)


def eigenspaces(g: AlgebraMap, candidates: Sequence | None = None,
                within: Subspace | None = None) -> EigenReport:
    """Kernels of g - lam for each candidate lam; nonzero ones are reported.

    ``resolved`` is true when the eigenspaces fill the whole algebra (or
    ``within``, when given).
    """
    L = g.algebra
    fld = L.field
    if candidates is None:
        candidates = default_candidates(g)
    cands = _dedupe(fld.coerce(c) for c in candidates)
    if not cands:
        raise AutomorphismError("candidate eigenvalue list is empty")
    space = within if within is not None else L.full_space()
    pairs = []
    total = 0
    for lam in cands:
        E = restricted_eigenspace(g, lam, space)
        if E.dim:
            pairs.append((lam, E))
            total += E.dim
            if total == space.dim:
                break
    return EigenReport(tuple(pairs), total == space.dim)


def default_candidates(g: AlgebraMap) -> list[Cyclotomic]:
    """Roots of unity of the field, plus entry ratios for diagonal inner maps."""
    fld = g.algebra.field
    cands = list(fld.roots_of_unity())
    A = g.defining
    if g.provenance == "inner" and A is not None and A.is_diagonal():
        d = A.diagonal()
        cands.extend(x / y for x in d for y in d)
    return _dedupe(cands)


def is_involutive(g: AlgebraMap) -> bool:
    return (g.matrix @ g.matrix) == ScalarMatrix.identity(g.algebra.field, g.algebra.dim)


def fixed_subspace(g: AlgebraMap) -> Subspace:
    return restricted_eigenspace(g, 1, g.algebra.full_space())


def maps_equal_on(g: AlgebraMap, h: AlgebraMap, vectors) -> bool:
    return all(g.apply(v) == h.apply(v) for v in vectors)


def is_zero_map(g: AlgebraMap) -> bool:
    return all(is_zero_vec(r) for r in g.matrix.raw)
