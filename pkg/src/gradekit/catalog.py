"""Concrete generators and gradings: Pauli pairs, Cartan tori, the four
gradings of sl(2), the direct-sum gradings of o(4) and standard forms K."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from gradekit import kernels as K
from gradekit.autos import inner_auto, outer_auto
from gradekit.errors import GradingError
from gradekit.exactmath import (
    ScalarMatrix,
    Subspace,
    canonicalize_raw,
    field,
)
from gradekit.gradings import (
    Grading,
    displayed,
    grade_by,
    profile_string,
    trivial_grading,
    verify_grading,
)
from gradekit.liealg import (
    MatrixLieAlgebra,
    ideal_decomposition,
    make_orthogonal,
    make_sl,
    make_symplectic,
)

__all__ = [
    "pauli_matrices",
    "cartan_generators",
    "sl2_catalog",
    "o4_catalog",
    "standard_K_list",
    "antidiagonal",
    "standard_symplectic",
    "CatalogEntry",
    "ENTRIES",
    "entry_names",
    "build_entry",
]

PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def pauli_matrices(m: int, conductor: int = 4) -> tuple[ScalarMatrix, ScalarMatrix]:
    """(P_m, Q_m): P = diag(1, w, ..., w^(m-1)) with w = exp(2 pi i/m), Q the cyclic shift.

    Q has ones at (i, i+1) and (m-1, 0), so Q P = w P Q.
    """
    if m < 2:
        raise ValueError("m must be at least 2")
    fld = field(conductor)
    w = fld.root_of_unity(m)
    P = ScalarMatrix.diag(fld, [w ** k for k in range(m)])
    Q = ScalarMatrix.of(fld, [[1 if j == (i + 1) % m else 0 for j in range(m)]
                              for i in range(m)])
    return P, Q


def antidiagonal(m: int, conductor: int = 4, skew: bool = False) -> ScalarMatrix:
    """Ones on the antidiagonal; with ``skew`` the lower half is negated."""
    fld = field(conductor)
    return ScalarMatrix.of(fld, [[(-1 if skew and i >= m // 2 else 1) if j == m - 1 - i else 0
                                  for j in range(m)] for i in range(m)])


def standard_symplectic(m: int, conductor: int = 4) -> ScalarMatrix:
    """[[0, I], [-I, 0]] of even size m."""
    if m % 2:
        raise ValueError("symplectic forms need even size")
    h = m // 2
    fld = field(conductor)
    return ScalarMatrix.of(fld, [[1 if j == i + h else -1 if i == j + h else 0
                                  for j in range(m)] for i in range(m)])


def standard_K_list(m: int, conductor: int = 4) -> list[tuple[str, ScalarMatrix, str]]:
    """Named candidate forms K, each tagged ``symmetric`` or ``antisymmetric``."""
    if m < 2:
        raise ValueError("m must be at least 2")
    fld = field(conductor)
    out = [("identity", ScalarMatrix.identity(fld, m), "symmetric"),
           ("antidiagonal", antidiagonal(m, conductor), "symmetric")]
    for p in range(m - 1, 0, -1):
        out.append((f"signature({p},{m - p})",
                    ScalarMatrix.diag(fld, [1] * p + [-1] * (m - p)), "symmetric"))
    if m % 2 == 0:
        h = m // 2
        out.append(("symplectic", standard_symplectic(m, conductor), "antisymmetric"))
        out.append(("antidiagonal_skew", antidiagonal(m, conductor, skew=True), "antisymmetric"))
        blocks = [[0] * m for _ in range(m)]
        for k in range(h):
            blocks[2 * k][2 * k + 1] = 1
            blocks[2 * k + 1][2 * k] = -1
        out.append(("block_skew", ScalarMatrix.of(fld, blocks), "antisymmetric"))
    return out


# ----------------------------------------------------------------- Cartan

def _hyperbolic_basis(Kmat: ScalarMatrix):
    """Columns u_1, v_1, ..., (w) with u_k, v_k isotropic pairs for x^T K y.

    Works for K with one nonzero entry per row, pairing equal or opposite
    diagonal entries directly (the equal case needs sqrt(-1)).
    """
    fld = Kmat.field
    m = Kmat.rows
    pair = []
    for i in range(m):
        nz = [j for j in range(m) if not Kmat[i, j].is_zero()]
        if len(nz) != 1:
            raise GradingError("Cartan tori are built only for K with one nonzero entry per row")
        pair.append(nz[0])
    zero = [0] * m

    def unit(i, c=1):
        v = zero[:]
        v[i] = c
        return v

    cols = []
    fixed = []
    for i in range(m):
        j = pair[i]
        if j == i:
            fixed.append(i)
        elif i < j:
            cols.append((unit(i), unit(j)))
    while len(fixed) >= 2:
        i, j = fixed.pop(0), None
        for t, cand in enumerate(fixed):
            a, b = Kmat[i, i], Kmat[cand, cand]
            if a == b or a == -b:
                j = fixed.pop(t)
                break
        if j is None:
            fixed.insert(0, i)
            break
        a, b = Kmat[i, i], Kmat[j, j]
        c = fld.one if a == -b else fld.root_of_unity(4)
        u = [fld.coerce(x) for x in unit(i)]
        v = [fld.coerce(x) for x in unit(i)]
        u[j] = c
        v[j] = -c
        cols.append((u, v))
    if len(fixed) > 1:
        raise GradingError("could not pair the diagonal of K into hyperbolic planes")
    return cols, fixed


def cartan_generators(L: MatrixLieAlgebra, Kmat: ScalarMatrix | None = None):
    """Generic torus element(s) and their candidate eigenvalue lists.

    For sl(m) this is Ad of diag(2, 3, 5, ...).  For o_K or sp_K the torus
    element acts as p_k and 1/p_k on the k-th isotropic pair of K.
    Returns ``(generators, candidates)``.
    """
    fld = L.field
    m = L.m
    if Kmat is None:
        D = ScalarMatrix.diag(fld, PRIMES[:m])
        vals = [fld.coerce(p) for p in PRIMES[:m]]
    else:
        pairs, fixed = _hyperbolic_basis(Kmat)
        cols, vals = [], []
        for k, (u, v) in enumerate(pairs):
            p = fld.coerce(PRIMES[k])
            cols += [u, v]
            vals += [p, p.inv()]
        for i in fixed:
            cols.append([1 if t == i else 0 for t in range(m)])
            vals.append(fld.one)
        T = ScalarMatrix.of(fld, [list(r) for r in zip(*cols)])
        D = T @ ScalarMatrix.diag(fld, vals) @ T.inverse()
    g = inner_auto(L, D)
    cands = list({(x / y).raw: x / y for x in vals for y in vals}.values())
    return [g], [cands]


# ------------------------------------------------------------------- sl(2)

def _span(L: MatrixLieAlgebra, mats) -> Subspace:
    return canonicalize_raw(L.field, L.dim, [L.coords(M) for M in mats])


def sl2_catalog(conductor: int = 4) -> list[Grading]:
    """[trivial, Y0, Y1, Y2] on sl(2) built from their spanning matrices."""
    L = make_sl(2, conductor)
    f = L.field
    H = ScalarMatrix.of(f, [[1, 0], [0, -1]])
    E = ScalarMatrix.of(f, [[0, 1], [0, 0]])
    F = ScalarMatrix.of(f, [[0, 0], [1, 0]])
    S = ScalarMatrix.of(f, [[0, 1], [1, 0]])
    A = ScalarMatrix.of(f, [[0, 1], [-1, 0]])
    y0 = Grading(L, [_span(L, [H]), _span(L, [E, F])], ["H", "E,F"])
    y1 = Grading(L, [_span(L, [H]), _span(L, [E]), _span(L, [F])], ["H", "E", "F"])
    y2 = Grading(L, [_span(L, [H]), _span(L, [S]), _span(L, [A])], ["H", "E+F", "E-F"])
    return [trivial_grading(L), y0, y1, y2]


# ------------------------------------------------------------------- o(4)

def _sl2_triple(I: MatrixLieAlgebra, cartan: Grading):
    """Coordinates (in the parent) of H, E, F spanning the ideal I, taken from
    the lines of a Cartan grading that lie inside I."""
    L = cartan.algebra
    Ispace = canonicalize_raw(L.field, L.dim, I.inclusion)
    lines = [S for S in cartan.subspaces if S.dim == 1 and Ispace.contains(S)]
    h = next((S for S in (T.meet(Ispace) for T in cartan.subspaces if T.dim > 1) if S.dim == 1), None)
    if h is None or len(lines) != 2:
        raise GradingError("ideal is not spanned by Cartan lines")
    fld = L.field
    hv, ev, fv = h.rows[0], lines[0].rows[0], lines[1].rows[0]
    # rescale so that [H, E] = 2E and [E, F] = H
    he = L.bracket_raw(hv, ev)
    k = next(i for i, x in enumerate(ev) if not K.is_zero(x))
    lam = fld.raw_mul(he[k], fld.raw_inv(ev[k]))
    two_over = fld.raw_mul(fld.raw_of(2), fld.raw_inv(lam))
    H = tuple(fld.raw_mul(two_over, x) for x in hv)
    ef = L.bracket_raw(ev, fv)
    k = next(i for i, x in enumerate(H) if not K.is_zero(x))
    mu = fld.raw_mul(ef[k], fld.raw_inv(H[k]))
    F = tuple(fld.raw_mul(fld.raw_inv(mu), x) for x in fv)
    return H, ev, F


def _combine(fld, coeffs, vecs):
    acc = [fld.zero_raw] * len(vecs[0])
    for c, v in zip(coeffs, vecs):
        c = fld.raw_of(c)
        if K.is_zero(c):
            continue
        acc = [K.add(a, K.mul(c, x, fld.red)) for a, x in zip(acc, v)]
    return acc


_SL2_PATTERNS = {
    "cartan": ([(1, 0, 0)], [(0, 1, 0)], [(0, 0, 1)]),
    "pauli": ([(1, 0, 0)], [(0, 1, 1)], [(0, 1, -1)]),
}


def o4_catalog(conductor: int = 4) -> dict[str, Grading]:
    """Direct-sum gradings of o_I(4) = I1 + I2 and the refined Cartan grading."""
    fld = field(conductor)
    L = make_orthogonal(ScalarMatrix.identity(fld, 4))
    ideals = ideal_decomposition(L)
    if [I.dim for I in ideals] != [3, 3]:
        raise GradingError("o(4) did not split into two 3-dimensional ideals")
    gens, cands = cartan_generators(L, ScalarMatrix.identity(fld, 4))
    cartan = grade_by(L, gens, cands)
    triples = [_sl2_triple(I, cartan) for I in ideals]

    def parts(k, kind):
        out = []
        for pattern in _SL2_PATTERNS[kind]:
            vecs = [_combine(fld, c, triples[k]) for c in pattern]
            out.append(canonicalize_raw(fld, L.dim, vecs))
        return out

    def build(kinds, names):
        subs = parts(0, kinds[0]) + parts(1, kinds[1])
        return Grading(L, subs, names)

    cc = ["H1", "E1", "F1", "H2", "E2", "F2"]
    cp = ["H1", "E1", "F1", "H2", "E2+F2", "E2-F2"]
    pp = ["H1", "E1+F1", "E1-F1", "H2", "E2+F2", "E2-F2"]
    refined = build(("cartan", "cartan"), cc)
    h = refined.subspaces[0].join(refined.subspaces[3])
    merged = Grading(L, [h] + [refined.subspaces[i] for i in (1, 2, 4, 5)],
                     ["H1,H2", "E1", "F1", "E2", "F2"])
    return {
        "cartan_x_cartan": merged,
        "cartan_x_pauli": build(("cartan", "pauli"), cp),
        "pauli_x_pauli": build(("pauli", "pauli"), pp),
        "cartan_refined": refined,
    }


# ---------------------------------------------------------- named entries

def kron(A: ScalarMatrix, B: ScalarMatrix) -> ScalarMatrix:
    a, b = A.entries, B.entries
    n, m = A.rows, B.rows
    return ScalarMatrix.of(A.field, [[a[i // m][j // m] * b[i % m][j % m] for j in range(n * m)]
                                     for i in range(n * m)])


def block_diag(A: ScalarMatrix, B: ScalarMatrix) -> ScalarMatrix:
    n, m = A.rows, B.rows
    fld = A.field
    rows = [[fld.zero] * (n + m) for _ in range(n + m)]
    for i in range(n):
        for j in range(n):
            rows[i][j] = A[i, j]
    for i in range(m):
        for j in range(m):
            rows[n + i][n + j] = B[i, j]
    return ScalarMatrix.of(fld, rows)


@dataclass(frozen=True)
class CatalogEntry:
    """A named, reproducible grading.

    ``build(conductor)`` returns ``(grading, generators, candidates)``;
    the last two are None for gradings given by explicit subspaces.
    ``source`` is ``"table"`` for rows whose profile is a published value
    and ``"derived"`` for supporting constructions.
    """

    name: str
    description: str
    expected_profile: str
    source: str
    build: Callable


def _from_gens(L, gens, cands=None):
    return grade_by(L, gens, cands), gens, cands


def _sl_cartan(m):
    def build(conductor):
        L = make_sl(m, conductor)
        gens, cands = cartan_generators(L)
        return _from_gens(L, gens, cands)
    return build


def _sl_pauli(m):
    def build(conductor):
        L = make_sl(m, conductor)
        P, Q = pauli_matrices(m, conductor)
        return _from_gens(L, [inner_auto(L, P), inner_auto(L, Q)])
    return build


def _sl2_explicit(k):
    def build(conductor):
        return sl2_catalog(conductor)[k], None, None
    return build


def _sp4_cartan(conductor):
    Kmat = standard_symplectic(4, conductor)
    L = make_symplectic(Kmat)
    gens, cands = cartan_generators(L, Kmat)
    return _from_gens(L, gens, cands)


def _sp4_torus_x_pauli(conductor):
    fld = field(conductor)
    L = make_symplectic(standard_symplectic(4, conductor))
    P, Q = pauli_matrices(2, conductor)
    s = fld.coerce(2)
    gens = [inner_auto(L, ScalarMatrix.diag(fld, [s, s, s.inv(), s.inv()])),
            inner_auto(L, block_diag(P, P)),
            inner_auto(L, block_diag(Q, Q))]
    return _from_gens(L, gens)


def _tensor_pauli_gens(L, conductor):
    fld = field(conductor)
    P, Q = pauli_matrices(2, conductor)
    one = ScalarMatrix.identity(fld, 2)
    return [inner_auto(L, kron(P, one)), inner_auto(L, kron(Q, one)),
            inner_auto(L, kron(one, P)), inner_auto(L, kron(one, Q))]


def _sl4_tensor_pauli(conductor):
    L = make_sl(4, conductor)
    return _from_gens(L, _tensor_pauli_gens(L, conductor))


def _sp4_tensor_pauli(conductor):
    G, _, _ = _sl4_tensor_pauli(conductor)
    return displayed(G, standard_symplectic(4, conductor), "symplectic"), None, None


def _sl4_cartan_outer(conductor):
    fld = field(conductor)
    L = make_sl(4, conductor)
    half, third = Fraction(1, 2), Fraction(1, 3)
    A = ScalarMatrix.diag(fld, [2, 3, third, half])
    return _from_gens(L, [inner_auto(L, A), outer_auto(L, antidiagonal(4, conductor))])


def _o4_displayed(conductor):
    G, _, _ = _sl4_cartan_outer(conductor)
    return displayed(G, antidiagonal(4, conductor), "orthogonal"), None, None


def _o4(key):
    def build(conductor):
        return o4_catalog(conductor)[key], None, None
    return build


_ENTRY_LIST = [
    CatalogEntry("sl2.trivial", "trivial grading of sl(2)", "1 x 3-dim", "table", _sl2_explicit(0)),
    CatalogEntry("sl2.upsilon0", "H line and the E,F plane", "1 x 2-dim + 1 x 1-dim",
                 "table", _sl2_explicit(1)),
    CatalogEntry("sl2.upsilon1", "Cartan grading of sl(2) from its spanning matrices",
                 "3 x 1-dim", "table", _sl2_explicit(2)),
    CatalogEntry("sl2.upsilon2", "Pauli grading of sl(2) from its spanning matrices",
                 "3 x 1-dim", "table", _sl2_explicit(3)),
    CatalogEntry("sl2.cartan", "Cartan grading of sl(2) by Ad diag(2,3)", "3 x 1-dim",
                 "derived", _sl_cartan(2)),
    CatalogEntry("sl2.pauli", "Pauli grading of sl(2) by Ad P2, Ad Q2", "3 x 1-dim",
                 "derived", _sl_pauli(2)),
    CatalogEntry("sl3.cartan", "Cartan grading of sl(3)", "1 x 2-dim + 6 x 1-dim",
                 "derived", _sl_cartan(3)),
    CatalogEntry("sl3.pauli", "Pauli grading of sl(3); needs conductor 3, 6 or 12",
                 "8 x 1-dim", "derived", _sl_pauli(3)),
    CatalogEntry("sl4.cartan", "Cartan grading of sl(4) by Ad diag(2,3,5,7)",
                 "1 x 3-dim + 12 x 1-dim", "table", _sl_cartan(4)),
    CatalogEntry("sl4.pauli", "Pauli grading of sl(4) by Ad P4, Ad Q4", "15 x 1-dim",
                 "table", _sl_pauli(4)),
    CatalogEntry("sl4.tensor_pauli", "Pauli x Pauli grading of sl(4) = sl(2 x 2)",
                 "15 x 1-dim", "derived", _sl4_tensor_pauli),
    CatalogEntry("sl4.cartan_outer",
                 "sl(4) by Ad diag(2,3,1/3,1/2) and Out_K, K antidiagonal",
                 "1 x 2-dim + 13 x 1-dim", "derived", _sl4_cartan_outer),
    CatalogEntry("sp4.cartan", "Cartan grading of sp(4)", "1 x 2-dim + 8 x 1-dim",
                 "table", _sp4_cartan),
    CatalogEntry("sp4.torus_x_pauli",
                 "sp(4) by a rank-one torus and the Pauli pair on both blocks",
                 "10 x 1-dim", "table", _sp4_torus_x_pauli),
    CatalogEntry("sp4.tensor_pauli", "sl4.tensor_pauli displayed on sp_K(4), K symplectic",
                 "10 x 1-dim", "table", _sp4_tensor_pauli),
    CatalogEntry("o4.cartan_x_cartan", "Cartan x Cartan on o(4) = sl(2) + sl(2)",
                 "1 x 2-dim + 4 x 1-dim", "table", _o4("cartan_x_cartan")),
    CatalogEntry("o4.cartan_x_pauli", "Cartan x Pauli on o(4)", "6 x 1-dim", "table",
                 _o4("cartan_x_pauli")),
    CatalogEntry("o4.pauli_x_pauli", "Pauli x Pauli on o(4)", "6 x 1-dim", "table",
                 _o4("pauli_x_pauli")),
    CatalogEntry("o4.cartan_refined", "Cartan grading of o(4) with the Cartan plane split",
                 "6 x 1-dim", "derived", _o4("cartan_refined")),
    CatalogEntry("o4.displayed_cartan_outer", "sl4.cartan_outer displayed on o_K(4)",
                 "1 x 2-dim + 4 x 1-dim", "derived", _o4_displayed),
]

ENTRIES: dict[str, CatalogEntry] = {e.name: e for e in _ENTRY_LIST}


def entry_names() -> list[str]:
    return list(ENTRIES)


def build_entry(name: str, conductor: int = 4):
    """``(grading, generators, candidates)`` for a named entry."""
    try:
        entry = ENTRIES[name]
    except KeyError:
        raise GradingError(f"unknown catalog entry {name!r}") from None
    G, gens, cands = entry.build(conductor)
    if G is None:
        raise GradingError(f"catalog entry {name!r} could not be constructed")
    if profile_string(G) != entry.expected_profile:
        raise GradingError(
            f"catalog entry {name!r} has profile {profile_string(G)}, "
            f"expected {entry.expected_profile}")
    return G, gens, cands
