from fractions import Fraction

import pytest

from gradekit.autos import inner_auto
from gradekit.catalog import ENTRIES, build_entry, pauli_matrices, sl2_catalog, standard_K_list
from gradekit.errors import ConductorTooSmall, GradingError
from gradekit.exactmath import ScalarMatrix, canonicalize, field
from gradekit.gradings import (
    Grading,
    Group,
    NotGroupIndexable,
    coarsen,
    diag_group,
    displayed,
    fingerprint,
    grade_by,
    hierarchy_dot,
    is_finest,
    profile_string,
    refines,
    regrade_from_diag,
    trivial_grading,
    universal_group,
    verify_grading,
)
from gradekit.autos import is_automorphism
from gradekit.liealg import make_sl
from strategies import random_diagonal_gradings

F4 = field(4)
TRIV, Y0, Y1, Y2 = sl2_catalog()
SL2 = Y0.algebra


def diag(*xs):
    return ScalarMatrix.diag(F4, [Fraction(x) for x in xs])


def span(*vectors):
    return canonicalize(vectors, F4, 3)


def eigen_labelled():
    """Every grading produced by grade_by that the suite knows about."""
    out = [build_entry(n)[0] for n in ENTRIES if not n.startswith("sl3") and build_entry(n)[1]]
    return out + random_diagonal_gradings(30, seed=7)


# grade_by

def test_sign_conjugation_gives_y0():
    assert grade_by(SL2, [inner_auto(SL2, diag(1, -1))]) == Y0


def test_generic_torus_gives_y1():
    assert grade_by(SL2, [inner_auto(SL2, diag(1, 2))]) == Y1


def test_pauli_pair_gives_y2():
    P, Q = pauli_matrices(2)
    assert grade_by(SL2, [inner_auto(SL2, P), inner_auto(SL2, Q)]) == Y2


def test_unresolved_spectrum_is_an_error():
    with pytest.raises(GradingError):
        grade_by(SL2, [inner_auto(SL2, diag(2, 3))], [[1]])


def test_non_commuting_generators_rejected():
    from gradekit.autos import outer_auto
    with pytest.raises(GradingError):
        grade_by(SL2, [inner_auto(SL2, diag(2, 3)), outer_auto(SL2, ScalarMatrix.identity(F4, 2))])


# verify_grading

def test_sl2_gradings_verify():
    for G in (TRIV, Y0, Y1, Y2):
        assert verify_grading(G).ok


def test_overlapping_lines_fail():
    # H, E+F, E: E+F and E do not complete a direct sum with F missing
    G = Grading(SL2, [span((1, 0, 0)), span((0, 1, 1)), span((0, 1, 0))])
    rep = verify_grading(G)
    assert not rep.ok and rep.violations


def test_split_symmetric_part_with_cartan_line():
    # [H, E+F] = 2(E-F) lands in span(E-F), and [E+F, E-F] = -2H lands in span H
    G = Grading(SL2, [span((1, 0, 0)), span((0, 1, 1)), span((0, 1, -1))])
    assert verify_grading(G).ok
    assert G == Y2


def test_non_closed_decomposition_reports_violation():
    G = Grading(SL2, [span((1, 1, 0)), span((0, 1, 0)), span((0, 0, 1))])
    rep = verify_grading(G)
    assert rep.direct and not rep.ok


# refines / coarsen / is_finest

def test_refinement_order_on_sl2():
    assert refines(Y1, Y0)
    for G in (Y0, Y1, Y2):
        assert refines(G, TRIV)
    assert not refines(Y1, Y2) and not refines(Y2, Y1)


def test_refines_is_a_partial_order():
    gs = [TRIV, Y0, Y1, Y2]
    for a in gs:
        assert refines(a, a)
        for b in gs:
            if a != b and refines(a, b):
                assert not refines(b, a)
            for c in gs:
                if refines(a, b) and refines(b, c):
                    assert refines(a, c)


def test_coarsen():
    e, f = Y1.labels.index("E"), Y1.labels.index("F")
    h = Y1.labels.index("H")
    assert coarsen(Y1, [[h], [e, f]]) == Y0
    assert coarsen(Y1, [[0, 1, 2]]) == TRIV
    with pytest.raises(GradingError):
        coarsen(Y1, [[0, 1]])


def test_coarsening_y2_lines_is_checked():
    h = Y2.labels.index("H")
    s, a = Y2.labels.index("E+F"), Y2.labels.index("E-F")
    G = coarsen(Y2, [[h], [s, a]])
    assert G == Y0
    # any two of the three Pauli lines merge into a Z2-grading
    assert verify_grading(coarsen(Y2, [[h, s], [a]])).ok


def test_invalid_merge_rejected():
    h, e, f = (Y1.labels.index(x) for x in ("H", "E", "F"))
    # [E, F] = H and [H, F] = -2F leave span{H, E} x span{F} with two targets
    with pytest.raises(GradingError):
        coarsen(Y1, [[h, e], [f]])


def test_is_finest():
    assert is_finest(Y2) and is_finest(Y1)
    assert not is_finest(Y0)
    assert not is_finest(build_entry("sl4.cartan")[0])


# universal group

def test_universal_groups_on_sl2():
    g = universal_group(Y2)
    assert isinstance(g, Group) and (g.free_rank, g.torsion) == (0, (2, 2))
    assert len(set(g.labels)) == 3 and g.identity() not in g.labels
    t = universal_group(TRIV)
    assert t.describe() == "trivial" and len(t.labels) == 1
    assert universal_group(Y1).canonical == (1, ())


def test_refined_cartan_of_o4_is_not_group_indexable():
    G = build_entry("o4.cartan_refined")[0]
    assert verify_grading(G).ok
    res = universal_group(G)
    assert isinstance(res, NotGroupIndexable)
    cartan = build_entry("o4.cartan_x_cartan")[0]
    plane = next(S for S in cartan.subspaces if S.dim == 2)
    j, k = res.witness
    assert plane.contains(G.subspaces[j]) and plane.contains(G.subspaces[k])


@pytest.mark.parametrize("name", [n for n in ENTRIES if not n.startswith("sl3")])
def test_universal_labels_satisfy_bracket_relations(name):
    G = build_entry(name)[0]
    grp = universal_group(G)
    if isinstance(grp, NotGroupIndexable):
        return
    assert len(set(grp.labels)) == len(G)
    for (j, k), l in verify_grading(G).table.items():
        assert grp.add(grp.labels[j], grp.labels[k]) == grp.labels[l]


# label multiplicativity

def test_eigenvalue_labels_multiply():
    for G in eigen_labelled():
        for (j, k), l in verify_grading(G).table.items():
            prod = tuple(a * b for a, b in zip(G.labels[j], G.labels[k]))
            assert prod == tuple(G.labels[l]), (G, j, k)


# Diag and regrading

def test_diag_groups_on_sl2():
    d1 = diag_group(Y1)
    assert (d1.free_rank, d1.torsion) == (1, ())
    d2 = diag_group(Y2)
    assert (d2.free_rank, d2.torsion) == (0, (2, 2))
    d0 = diag_group(TRIV)
    assert (d0.free_rank, d0.torsion) == (0, ())
    for d in (d1, d2, d0):
        assert all(is_automorphism(g) for g in d.generators)


def test_diag_reports_needed_conductor():
    G = build_entry("sl3.pauli", 3)[0]
    assert diag_group(G).torsion == (3, 3)
    lifted = Grading(G.algebra, G.subspaces)
    assert regrade_from_diag(lifted) == G


@pytest.mark.parametrize("G", [Y0, Y1, Y2, TRIV], ids=["Y0", "Y1", "Y2", "trivial"])
def test_regrade_sl2(G):
    assert regrade_from_diag(G) == G


def test_regrade_random_diagonal_gradings():
    for G in random_diagonal_gradings(100):
        assert regrade_from_diag(G) == G


# fingerprints

def test_fingerprints():
    assert fingerprint(Y1) != fingerprint(Y2)
    rev = Grading(Y2.algebra, Y2.subspaces[::-1], Y2.labels[::-1])
    assert fingerprint(rev) == fingerprint(Y2)


def test_two_sp4_fine_gradings_are_distinguished():
    a = build_entry("sp4.torus_x_pauli")[0]
    b = build_entry("sp4.tensor_pauli")[0]
    assert profile_string(a) == profile_string(b) == "10 x 1-dim"
    fa, fb = fingerprint(a), fingerprint(b)
    assert fa.group != fb.group


# displayed

def _K(m, name):
    return next(K for n, K, _ in standard_K_list(m) if n == name)


def test_displayed_torus_with_outer_twist():
    G = build_entry("sl4.cartan_outer")[0]
    H = displayed(G, _K(4, "antidiagonal"), "orthogonal")
    assert H is not None and profile_string(H) == "1 x 2-dim + 4 x 1-dim"
    assert verify_grading(H).ok
    sl4 = G.algebra
    for S in H.subspaces:
        lifted = canonicalize([sl4.coords(H.algebra.matrix_of(r)) for r in S.rows], F4, sl4.dim)
        assert any(T.contains(lifted) for T in G.subspaces)


def test_cartan_straddles_identity_form():
    G = build_entry("sl4.cartan")[0]
    assert displayed(G, _K(4, "identity"), "orthogonal") is None


def test_hierarchy_dot_has_covering_edges_only():
    dot = hierarchy_dot({"trivial": TRIV, "Y0": Y0, "Y1": Y1, "Y2": Y2})
    assert '"Y1" -> "Y0"' in dot and '"Y0" -> "trivial"' in dot
    assert '"Y1" -> "trivial"' not in dot


def _covered_dimension(G, S_alg):
    """sum_j dim(L_j meet S) with S = S_alg embedded in G's algebra."""
    L = G.algebra
    S = canonicalize([L.coords(X) for X in S_alg.basis], L.field, L.dim)
    return sum(T.meet(S).dim for T in G.subspaces)


def test_pauli_lines_meet_standard_sp4_in_six_dimensions():
    from gradekit.liealg import make_symplectic
    G = build_entry("sl4.pauli")[0]
    for name, K, kind in standard_K_list(4):
        if kind == "antisymmetric":
            assert _covered_dimension(G, make_symplectic(K)) == 6, name
            assert displayed(G, K, "symplectic") is None


def test_sp4_fine_gradings_come_from_other_constructions():
    a = build_entry("sp4.tensor_pauli")[0]
    assert verify_grading(a).ok and profile_string(a) == "10 x 1-dim"
    assert universal_group(a).describe() == "Z2 x Z2 x Z2 x Z2"
    b = build_entry("sp4.torus_x_pauli")[0]
    assert universal_group(b).describe() == "Z x Z2 x Z2"
