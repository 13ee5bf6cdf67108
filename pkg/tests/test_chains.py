import pytest
from hypothesis import given
from hypothesis import strategies as st

from enkoszul import oracle
from enkoszul.chains import (
    F2,
    ZZ,
    ChainComplexSlice,
    Elimination,
    NoSolution,
    Ring,
    SparseMatrix,
    determinant,
    diagonal,
    homology,
    homology_report,
    invariant_factors,
    matmul,
    rank,
    smith_normal_form,
    solve_in_image,
)

small = st.integers(-4, 4)


def matrices(max_rows=5, max_cols=5):
    return st.integers(1, max_rows).flatmap(
        lambda m: st.integers(1, max_cols).flatmap(
            lambda n: st.lists(st.lists(small, min_size=n, max_size=n), min_size=m, max_size=m)))


def test_ring_parse():
    assert Ring.parse("Z") == ZZ
    assert Ring.parse("f2") == F2
    assert Ring.parse("GF3") == Ring(3)
    assert str(Ring(5)) == "F5"
    with pytest.raises(ValueError):
        Ring(4)
    with pytest.raises(ValueError):
        Ring.parse("Q")


def test_ring_units():
    assert ZZ.is_unit(-1) and not ZZ.is_unit(2)
    assert F2.inv(1) == 1
    assert Ring(7).inv(3) * 3 % 7 == 1
    with pytest.raises(ZeroDivisionError):
        ZZ.inv(2)


def test_smith_known():
    # the oracle's worked example, frozen
    A = [[2, 4, 4], [-6, 6, 12], [10, -4, -16]]
    U, D, V = smith_normal_form(A)
    assert diagonal(D) == [2, 6, 12]
    assert matmul(matmul(U, A), V) == D
    assert oracle.smith_diagonal(A) == [2, 6, 12]


@given(matrices())
def test_smith_properties(A):
    U, D, V = smith_normal_form(A)
    assert matmul(matmul(U, A), V) == D
    assert abs(determinant(U)) == 1 and abs(determinant(V)) == 1
    d = diagonal(D)
    assert all(b % a == 0 for a, b in zip(d, d[1:]))
    assert d == oracle.smith_diagonal(A)
    assert invariant_factors(SparseMatrix.from_dense(A)) == sorted(d)


@given(matrices())
def test_smith_mod2(A):
    U, D, V = smith_normal_form(A, F2)
    assert len(diagonal(D)) == len(oracle.smith_diagonal(A, 2)) == rank(SparseMatrix.from_dense(A), F2)


@given(matrices(6, 6), st.lists(small, min_size=6, max_size=6))
def test_solve_in_image(A, x):
    M = SparseMatrix.from_dense(A)
    x = x[:M.ncols]
    b = M.apply(x)
    y = solve_in_image(M, b)
    assert M.apply(y) == b
    # canonical: the same b always gives the same answer
    assert solve_in_image(M, b) == y


def test_no_solution():
    M = SparseMatrix.from_dense([[2, 0], [0, 2]])
    with pytest.raises(NoSolution):
        solve_in_image(M, [1, 0])
    assert solve_in_image(M, [1, 0], Ring(3)) == [2, 0]
    with pytest.raises(NoSolution):
        solve_in_image(M, [1, 0], F2)


def test_elimination_kernel():
    M = SparseMatrix.from_dense([[1, 1, 0], [0, 1, 1]])
    E = Elimination(M)
    assert E.rank == 2
    free = E.free_cols()
    assert len(free) == 1
    v = E.kernel_vector(free[0])
    assert M.apply(v) == [0, 0]


def test_sparse_basics():
    A = SparseMatrix.from_dense([[1, 2], [0, 3]])
    B = SparseMatrix.from_dense([[0, 1], [1, 0]])
    assert (A @ B).to_dense() == [[2, 1], [3, 0]]
    assert A.transpose().to_dense() == [[1, 0], [2, 3]]
    assert A.nnz() == 3
    assert SparseMatrix.from_dense([[2]]).is_zero(F2)


def circle():
    # S^1 as two vertices and two edges
    d1 = SparseMatrix.from_dense([[-1, -1], [1, 1]])
    return ChainComplexSlice({0: ["a", "b"], 1: ["e", "f"]}, {1: d1})


def projective_plane():
    # a CW model: one cell in each degree, d_2 = 2
    return ChainComplexSlice({0: ["p"], 1: ["e"], 2: ["c"]},
                             {1: SparseMatrix.from_dense([[0]]), 2: SparseMatrix.from_dense([[2]])})


def test_homology_circle():
    C = circle()
    assert C.check()
    assert homology(C, 0) == (1, [])
    assert homology(C, 1) == (1, [])


def test_homology_torsion_and_dual():
    C = projective_plane()
    assert homology(C, 1) == (0, [2])
    assert homology(C, 2) == (0, [])
    assert homology(C, 1, F2) == (1, [])
    D = C.dual()
    assert D.check()
    # cohomology of RP^2: Z, 0, Z/2
    assert homology(D, 0) == (1, [])
    assert homology(D, -1) == (0, [])
    assert homology(D, -2) == (0, [2])
    rep = homology_report(C)
    assert rep.signature() == {0: (1, ()), 1: (0, (2,)), 2: (0, ())}
    with pytest.raises(ValueError):
        homology(C, 5)
