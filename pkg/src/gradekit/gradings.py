"""Gradings of matrix Lie algebras.

A grading is stored as an ordered list of subspaces of the coordinate space
of its algebra, each carrying a label.  Labels are tuples of eigenvalues when
the grading comes from automorphisms, and plain indices otherwise.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field as dc_field
from typing import Sequence

from gradekit import kernels as K
from gradekit.autos import (
    AlgebraMap,
    commute,
    diagonal_map,
    eigenspaces,
    is_automorphism,
)
from gradekit.errors import GradingError
from gradekit.exactmath import (
    ScalarMatrix,
    Subspace,
    canonicalize_raw,
    inverse_raw,
    is_zero_vec,
    matvec_raw,
    smith_normal_form,
)
from gradekit.liealg import MatrixLieAlgebra, make_orthogonal, make_symplectic

__all__ = [
    "Grading",
    "GradingReport",
    "Group",
    "NotGroupIndexable",
    "DiagDescription",
    "Fingerprint",
    "grade_by",
    "verify_grading",
    "refines",
    "coarsen",
    "universal_group",
    "diag_group",
    "regrade_from_diag",
    "is_finest",
    "fingerprint",
    "displayed",
    "profile",
    "profile_string",
    "trivial_grading",
    "hierarchy_dot",
]


class Grading:
    """Ordered decomposition of an algebra into labelled subspaces.

    Construction does not enforce the grading axioms; ``verify_grading``
    reports on them.  Two gradings compare equal when they live on the same
    algebra and have the same set of subspaces, whatever the labels.
    """

    __slots__ = ("algebra", "subspaces", "labels", "_report")

    def __init__(self, algebra: MatrixLieAlgebra, subspaces: Sequence[Subspace],
                 labels: Sequence | None = None):
        subspaces = tuple(subspaces)
        if not subspaces:
            raise GradingError("a grading needs at least one subspace")
        for S in subspaces:
            if S.field is not algebra.field or S.ambient_dim != algebra.dim:
                raise GradingError("subspace does not live in the algebra's coordinate space")
            if S.dim == 0:
                raise GradingError("grading subspaces must be nonzero")
        if labels is None:
            labels = tuple(range(len(subspaces)))
        labels = tuple(labels)
        if len(labels) != len(subspaces):
            raise GradingError("one label per subspace is required")
        self.algebra = algebra
        self.subspaces = subspaces
        self.labels = labels
        self._report = None

    def __len__(self):
        return len(self.subspaces)

    def __iter__(self):
        return iter(zip(self.labels, self.subspaces))

    def __repr__(self):
        return f"Grading({self.algebra.name}: {profile_string(self)})"

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(S.dim for S in self.subspaces)

    def key(self):
        return tuple(sorted(S.sort_key() for S in self.subspaces))

    def __eq__(self, other):
        if not isinstance(other, Grading):
            return NotImplemented
        return self.algebra is other.algebra and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def sorted(self) -> "Grading":
        """Same grading with subspaces in canonical order."""
        order = sorted(range(len(self)), key=lambda j: self.subspaces[j].sort_key())
        return Grading(self.algebra, [self.subspaces[j] for j in order],
                       [self.labels[j] for j in order])

    def index_of_vector(self, v) -> int | None:
        for j, S in enumerate(self.subspaces):
            if S.contains_vector(v):
                return j
        return None


def trivial_grading(L: MatrixLieAlgebra) -> Grading:
    return Grading(L, [L.full_space()], [()])


# ---------------------------------------------------------------- generation

def grade_by(L: MatrixLieAlgebra, gens: Sequence[AlgebraMap],
             candidates: Sequence[Sequence] | None = None) -> Grading:
    """Common refinement of the eigenspace decompositions of ``gens``.

    Labels are the tuples of eigenvalues, one entry per generator.  When
    ``candidates`` is omitted each generator uses its default candidates.
    """
    gens = list(gens)
    if candidates is not None and len(candidates) != len(gens):
        raise GradingError("one candidate list per generator is required")
    for i, g in enumerate(gens):
        if g.algebra is not L:
            raise GradingError(f"generator {i} acts on a different algebra")
        if not is_automorphism(g):
            raise GradingError(f"generator {i} is not an automorphism")
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            if not commute(gens[i], gens[j]):
                raise GradingError(f"generators {i} and {j} do not commute")
    pieces = [((), L.full_space())]
    for i, g in enumerate(gens):
        cands = None if candidates is None else candidates[i]
        nxt = []
        for lab, S in pieces:
            rep = eigenspaces(g, cands, within=S)
            if not rep.resolved:
                raise GradingError(
                    f"spectrum of generator {i} is not covered by its candidate eigenvalues")
            nxt.extend((lab + (lam,), E) for lam, E in rep.pairs)
        pieces = nxt
    pieces.sort(key=lambda p: p[1].sort_key())
    return Grading(L, [S for _, S in pieces], [lab for lab, _ in pieces])


# -------------------------------------------------------------- verification

@dataclass(frozen=True)
class GradingReport:
    """Outcome of ``verify_grading``.

    ``table`` maps each pair j <= k whose bracket is nonzero to the index of
    the subspace receiving it (None when no single subspace does).
    """

    ok: bool
    direct: bool
    violations: tuple[str, ...]
    table: dict = dc_field(default_factory=dict, compare=False)

    def __bool__(self):
        return self.ok


def _target(G: Grading, images, coords_of) -> int | None:
    """Index of the single subspace holding all images, or None."""
    cands = None
    for v in images:
        if coords_of is not None:
            blocks = coords_of(v)
            if len(blocks) != 1:
                return None
            (b,) = blocks
            if cands is None:
                cands = {b}
            elif b not in cands:
                return None
        else:
            here = {j for j in (cands if cands is not None else range(len(G)))
                    if G.subspaces[j].contains_vector(v)}
            if not here:
                return None
            cands = here
    return min(cands)


def verify_grading(G: Grading) -> GradingReport:
    """Check the direct-sum property and single-target bracket containment."""
    if G._report is not None:
        return G._report
    L = G.algebra
    fld = L.field
    violations = []
    cols = [r for S in G.subspaces for r in S.rows]
    owner = [j for j, S in enumerate(G.subspaces) for _ in range(S.dim)]
    direct = False
    if len(cols) != L.dim:
        violations.append(
            f"not a direct sum: subspace dimensions add to {len(cols)}, algebra has {L.dim}")
    else:
        Binv = inverse_raw(fld, [list(r) for r in zip(*cols)])
        if Binv is None:
            violations.append("not a direct sum: subspaces are linearly dependent")
        else:
            direct = True
    coords_of = None
    if direct:
        def coords_of(v):
            c = matvec_raw(fld, Binv, v)
            return {owner[i] for i, x in enumerate(c) if not K.is_zero(x)}
    table = {}
    n = len(G)
    for j in range(n):
        for k in range(j, n):
            images = []
            for x in G.subspaces[j].rows:
                for y in G.subspaces[k].rows:
                    b = L.bracket_raw(x, y)
                    if not is_zero_vec(b):
                        images.append(b)
            if not images:
                continue
            t = _target(G, images, coords_of)
            table[(j, k)] = t
            if t is None:
                violations.append(f"bracket of subspaces {j} and {k} is not inside a single subspace")
    rep = GradingReport(not violations, direct, tuple(violations), table)
    G._report = rep
    return rep


def _require_verified(G: Grading) -> GradingReport:
    rep = verify_grading(G)
    if not rep.ok:
        raise GradingError("grading fails verification: " + "; ".join(rep.violations))
    return rep


# ---------------------------------------------------------------- refinement

def refines(fine: Grading, coarse: Grading) -> bool:
    """True iff each part of ``fine`` sits in exactly one part of ``coarse``
    and each coarse part is the join of the fine parts inside it."""
    if fine.algebra is not coarse.algebra:
        raise GradingError("gradings live on different algebras")
    parts = [[] for _ in coarse.subspaces]
    for S in fine.subspaces:
        homes = [i for i, C in enumerate(coarse.subspaces) if C.contains(S)]
        if len(homes) != 1:
            return False
        parts[homes[0]].append(S)
    for C, ps in zip(coarse.subspaces, parts):
        if not ps:
            return False
        J = ps[0]
        for S in ps[1:]:
            J = J.join(S)
        if J != C:
            return False
    return True


def coarsen(G: Grading, partition: Sequence[Sequence[int]]) -> Grading:
    """Join the subspaces of ``G`` block by block; the result must verify."""
    flat = sorted(i for block in partition for i in block)
    if flat != list(range(len(G))) or any(len(b) == 0 for b in partition):
        raise GradingError("partition must cover every subspace index exactly once")
    subs = []
    for block in partition:
        J = G.subspaces[block[0]]
        for i in block[1:]:
            J = J.join(G.subspaces[i])
        subs.append(J)
    H = Grading(G.algebra, subs, [tuple(sorted(b)) for b in partition])
    rep = verify_grading(H)
    if not rep.ok:
        raise GradingError("coarsening violates the grading axioms: " + "; ".join(rep.violations))
    return H


def is_finest(G: Grading) -> bool:
    return all(S.dim == 1 for S in G.subspaces)


# ------------------------------------------------------------ universal group

@dataclass(frozen=True)
class Group:
    """Finitely generated abelian group Z^free_rank x Z_t1 x ... with labels.

    Each label lists the free coordinates first, then one residue per
    torsion factor.
    """

    free_rank: int
    torsion: tuple[int, ...]
    labels: tuple[tuple[int, ...], ...]

    @property
    def canonical(self) -> tuple:
        return (self.free_rank, self.torsion)

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    @property
    def order(self) -> int | None:
        if self.free_rank:
            return None
        out = 1
        for t in self.torsion:
            out *= t
        return out

    def identity(self) -> tuple[int, ...]:
        return (0,) * (self.free_rank + len(self.torsion))

    def add(self, u, v) -> tuple[int, ...]:
        r = self.free_rank
        out = [a + b for a, b in zip(u[:r], v[:r])]
        out += [(a + b) % t for a, b, t in zip(u[r:], v[r:], self.torsion)]
        return tuple(out)

    def describe(self) -> str:
        parts = ["Z"] * self.free_rank + [f"Z{t}" for t in self.torsion]
        return " x ".join(parts) if parts else "trivial"


@dataclass(frozen=True)
class NotGroupIndexable:
    """Two distinct subspaces are forced onto the same group element."""

    witness: tuple[int, int]

    def describe(self) -> str:
        return f"not group-indexable (subspaces {self.witness[0]} and {self.witness[1]} collide)"


@dataclass(frozen=True)
class _Lattice:
    factors: tuple[int, ...]      # per kept coordinate: 0 for free, d >= 2 for torsion
    labels: tuple[tuple[int, ...], ...]


def _relations(G: Grading) -> list[list[int]]:
    rep = _require_verified(G)
    n = len(G)
    rows = set()
    for (j, k), l in rep.table.items():
        r = [0] * n
        r[j] += 1
        r[k] += 1
        r[l] -= 1
        if any(r):
            rows.add(tuple(r))
    return [list(r) for r in sorted(rows)]


def _lattice(G: Grading) -> _Lattice:
    """Z^n modulo the bracket relations, in Smith coordinates."""
    n = len(G)
    R = _relations(G)
    _, S, V = smith_normal_form(R, n)
    diag = [S[i][i] if i < len(S) else 0 for i in range(n)]
    keep = [i for i, d in enumerate(diag) if d != 1]
    # free coordinates first, then torsion in divisibility order
    keep.sort(key=lambda i: (diag[i] != 0, i))
    factors = tuple(diag[i] for i in keep)
    labels = []
    for j in range(n):
        lab = []
        for i in keep:
            x = V[j][i]
            lab.append(x % diag[i] if diag[i] else x)
        labels.append(tuple(lab))
    return _Lattice(factors, tuple(labels))


def universal_group(G: Grading) -> Group | NotGroupIndexable:
    """Universal grading group via Smith normal form of the relation lattice."""
    lat = _lattice(G)
    seen = {}
    for j, lab in enumerate(lat.labels):
        if lab in seen:
            return NotGroupIndexable((seen[lab], j))
        seen[lab] = j
    free = sum(1 for d in lat.factors if d == 0)
    torsion = tuple(d for d in lat.factors if d)
    return Group(free, torsion, lat.labels)


# -------------------------------------------------------------------- Diag

_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71)


def _primes(k: int) -> list[int]:
    out = list(_PRIMES[:k])
    c = _PRIMES[-1]
    while len(out) < k:
        c += 2
        if all(c % p for p in out if p * p <= c):
            out.append(c)
    return out


@dataclass(frozen=True)
class DiagDescription:
    """Diag of a grading as the character group of its universal group.

    ``characters[j]`` is the exponent vector of subspace j.  ``generators``
    are scaling automorphisms, one per coordinate; ``values[i][j]`` is the
    scalar by which generator i acts on subspace j.
    """

    free_rank: int
    torsion: tuple[int, ...]
    characters: tuple[tuple[int, ...], ...]
    generators: tuple[AlgebraMap, ...]
    values: tuple[tuple, ...]


def diag_group(G: Grading) -> DiagDescription:
    """Torus rank, torsion and concrete generators of Diag(G).

    Free coordinates are instantiated at consecutive primes and torsion
    coordinates at primitive roots of unity.  Raises ``ConductorTooSmall``
    when the field lacks a needed root.
    """
    L = G.algebra
    fld = L.field
    lat = _lattice(G)
    nfree = sum(1 for d in lat.factors if d == 0)
    primes = iter(_primes(nfree))
    gens, values = [], []
    for i, d in enumerate(lat.factors):
        base = fld.coerce(next(primes)) if d == 0 else fld.root_of_unity(d)
        vals = tuple(base ** lab[i] for lab in lat.labels)
        g = diagonal_map(L, G.subspaces, vals)
        if not is_automorphism(g):
            raise GradingError("internal error: scaling map is not an automorphism")
        gens.append(g)
        values.append(vals)
    torsion = tuple(d for d in lat.factors if d)
    return DiagDescription(nfree, torsion, lat.labels, tuple(gens), tuple(values))


def regrade_from_diag(G: Grading) -> Grading:
    """Grading by the simultaneous eigenspaces of the generators of Diag(G)."""
    U = universal_group(G)
    if isinstance(U, NotGroupIndexable):
        raise GradingError("grading is not group-indexable: " + U.describe())
    D = diag_group(G)
    if not D.generators:
        return trivial_grading(G.algebra)
    cands = [list(dict.fromkeys(v)) for v in D.values]
    return grade_by(G.algebra, D.generators, cands)


# ------------------------------------------------------------- fingerprints

def profile(G: Grading) -> tuple[tuple[int, int], ...]:
    """(dimension, count) pairs, largest dimension first."""
    c = Counter(G.dims)
    return tuple(sorted(c.items(), reverse=True))


def profile_string(G: Grading) -> str:
    return " + ".join(f"{cnt} x {d}-dim" for d, cnt in profile(G))


@dataclass(frozen=True)
class Fingerprint:
    profile: tuple[tuple[int, int], ...]
    group: tuple
    bracket_degrees: tuple[tuple[int, int, int], ...]

    def describe(self) -> str:
        if self.group[0] == "non-indexable":
            g = "non-indexable"
        else:
            r, tors = self.group
            g = " x ".join(["Z"] * r + [f"Z{t}" for t in tors]) or "trivial"
        prof = " + ".join(f"{c} x {d}-dim" for d, c in self.profile)
        return f"{prof} | {g} | {len(self.bracket_degrees)} nonzero bracket pairs"


def fingerprint(G: Grading) -> Fingerprint:
    """Equivalence-invariant summary of a verified grading."""
    rep = _require_verified(G)
    U = universal_group(G)
    group = ("non-indexable",) if isinstance(U, NotGroupIndexable) else U.canonical
    dims = G.dims
    degs = []
    for (j, k), l in rep.table.items():
        a, b = sorted((dims[j], dims[k]))
        degs.append((a, b, dims[l]))
    return Fingerprint(profile(G), group, tuple(sorted(degs)))


# -------------------------------------------------------------- displayed

def displayed(G: Grading, Kmat: ScalarMatrix, kind: str) -> Grading | None:
    """Restrict G to o_K(m) or sp_K(m) when that subalgebra is a sum of
    intersections with the parts of G; otherwise return None."""
    _require_verified(G)
    L = G.algebra
    if kind in ("orthogonal", "o", "symmetric"):
        S = make_orthogonal(Kmat)
    elif kind in ("symplectic", "sp", "antisymmetric"):
        S = make_symplectic(Kmat)
    else:
        raise GradingError(f"unknown kind {kind!r}; use 'orthogonal' or 'symplectic'")
    if S.m != L.m or S.field is not L.field:
        raise GradingError("K does not match the ambient algebra")
    inside = []
    for B in S.basis:
        c = L.coords(B)
        if c is None:
            raise GradingError("subalgebra is not contained in the graded algebra")
        inside.append(c)
    Sin = canonicalize_raw(L.field, L.dim, inside)
    parts, labels = [], []
    for lab, Lj in G:
        M = Lj.meet(Sin)
        if M.dim:
            parts.append(M)
            labels.append(lab)
    if sum(M.dim for M in parts) != S.dim:
        return None
    subs = []
    for M in parts:
        vecs = [S.coords(L.matrix_of(v)) for v in M.rows]
        subs.append(canonicalize_raw(S.field, S.dim, vecs))
    H = Grading(S, subs, labels)
    rep = verify_grading(H)
    if not rep.ok:
        raise GradingError("displayed decomposition fails verification: " + "; ".join(rep.violations))
    return H


# -------------------------------------------------------------- hierarchy

def hierarchy_dot(gradings: dict[str, Grading], name: str = "hierarchy") -> str:
    """DOT digraph of the refinement order; edges point from finer to coarser
    and only covering relations are drawn."""
    names = list(gradings)
    less = {(a, b) for a in names for b in names
            if a != b and refines(gradings[a], gradings[b])
            and gradings[a] != gradings[b]}
    cover = {(a, b) for (a, b) in less
             if not any((a, c) in less and (c, b) in less for c in names)}
    lines = [f"digraph {_dot_id(name)} {{", "  rankdir=BT;"]
    for a in names:
        lines.append(f'  {_dot_id(a)} [label="{a}\\n{profile_string(gradings[a])}"];')
    for a, b in sorted(cover):
        lines.append(f"  {_dot_id(a)} -> {_dot_id(b)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _dot_id(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'
