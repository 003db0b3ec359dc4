import pytest

from gradekit.catalog import standard_K_list
from gradekit.errors import AlgebraError
from gradekit.exactmath import ScalarMatrix, field
from gradekit.liealg import (
    bracket,
    closure_holds,
    ideal_decomposition,
    jacobi_holds,
    killing_matrix,
    make_orthogonal,
    make_sl,
    make_symplectic,
)


def all_algebras():
    out = [make_sl(m) for m in (2, 3, 4)]
    for m in (2, 3, 4):
        for name, K, kind in standard_K_list(m):
            out.append(make_orthogonal(K) if kind == "symmetric" else make_symplectic(K))
    return out


@pytest.mark.parametrize("L", all_algebras(), ids=lambda L: f"{L.name}-{L.dim}")
def test_jacobi_and_closure(L):
    assert jacobi_holds(L)
    assert closure_holds(L)


@pytest.mark.parametrize("m,dim", [(2, 3), (3, 8), (4, 15)])
def test_sl_dimensions(m, dim):
    L = make_sl(m)
    assert L.dim == dim
    assert killing_matrix(L).rank() == dim


def test_form_algebra_dimensions():
    for m in (2, 3, 4):
        for name, K, kind in standard_K_list(m):
            L = make_orthogonal(K) if kind == "symmetric" else make_symplectic(K)
            assert L.dim == (m * (m - 1) // 2 if kind == "symmetric" else m * (m + 1) // 2), name


def test_algebras_are_shared():
    assert make_sl(4) is make_sl(4, conductor=4)
    K = standard_K_list(4)[0][1]
    assert make_orthogonal(K) is make_orthogonal(ScalarMatrix.identity(field(4), 4))


def test_o4_splits_into_two_commuting_sl2():
    L = make_orthogonal(ScalarMatrix.identity(field(4), 4))
    I, J = ideal_decomposition(L)
    assert (I.dim, J.dim) == (3, 3)
    for a in range(3):
        for b in range(3):
            x = L.element(I.inclusion[a])
            y = L.element(J.inclusion[b])
            assert bracket(x, y).is_zero()


def test_simple_algebras_do_not_split():
    assert len(ideal_decomposition(make_sl(3))) == 1
    sp4 = make_symplectic(standard_K_list(4)[5][1])
    assert len(ideal_decomposition(sp4)) == 1


def test_sp_and_o_need_matching_K():
    fld = field(4)
    with pytest.raises(AlgebraError):
        make_orthogonal(ScalarMatrix.of(fld, [[0, 1], [-1, 0]]))
    with pytest.raises(AlgebraError):
        make_symplectic(ScalarMatrix.identity(fld, 2))


def test_bracket_is_commutator():
    L = make_sl(2)
    e, f = L.basis_element(0), L.basis_element(1)
    X = e.matrix() @ f.matrix() - f.matrix() @ e.matrix()
    assert bracket(e, f).matrix() == X
