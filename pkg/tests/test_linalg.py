from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from rank3id.errors import NotFullRowRank, ShapeMismatch
from rank3id.linalg import (Q, QMatrix, det, eigen2x2, inverse, kernel_basis, rank, right_inverse,
                            rref)

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=4)


def matrices(rows, cols):
    return st.lists(rationals, min_size=rows * cols, max_size=rows * cols).map(
        lambda xs: QMatrix(rows, cols, tuple(xs)))


def test_q_coercion():
    assert Q("3/6") == F(1, 2)
    assert Q(4) == F(4)
    with pytest.raises(TypeError):
        Q(0.5)
    with pytest.raises(TypeError):
        Q(True)


def test_shape_checked():
    with pytest.raises(ShapeMismatch):
        QMatrix(2, 2, (F(1),))


def test_rref_pivots():
    M = QMatrix.from_rows([[0, 2, 4], [0, 1, 2], [1, 0, 1]])
    R, piv, r = rref(M)
    assert piv == (0, 1) and r == 2
    assert R.to_rows() == [[1, 0, 1], [0, 1, 2], [0, 0, 0]]


def test_worked_matrix_rank():
    A = QMatrix.from_rows([[12, 8, 6, 4], [30, 20, 15, 10], [8, 8, 5, 6], [35, 38, 23, 30],
                           [16, 16, 10, 12], [52, 64, 37, 54]])
    assert rank(A) == 2


def test_kernel():
    M = QMatrix.from_rows([[1, 2, 3], [2, 4, 6]])
    ks = kernel_basis(M)
    assert len(ks) == 2
    for v in ks:
        assert M @ v == (0, 0)


def test_det_and_inverse():
    M = QMatrix.from_rows([[2, 1], [7, 4]])
    assert det(M) == 1
    assert inverse(M).to_rows() == [[4, -1], [-7, 2]]
    with pytest.raises(NotFullRowRank):
        inverse(QMatrix.from_rows([[1, 2], [2, 4]]))


def test_right_inverse():
    M = QMatrix.from_rows([[1, 0, 1], [0, 1, 1]])
    assert M @ right_inverse(M) == QMatrix.identity(2)
    with pytest.raises(NotFullRowRank):
        right_inverse(QMatrix.from_rows([[1, 1], [1, 1]]))


def test_eigen_worked():
    res = eigen2x2(QMatrix.from_rows([["5/2", 1], ["-3/4", "1/2"]]))
    assert res.kind == "distinct"
    assert res.eigenvalues == (2, 1)
    assert res.eigenvectors == ((-2, 1), (F(-2, 3), 1))


def test_eigen_repeated_and_irrational():
    assert eigen2x2(QMatrix.identity(2)).kind == "repeated"
    rot = eigen2x2(QMatrix.from_rows([[0, -1], [1, 0]]))
    assert rot.kind == "irrational" and rot.discriminant == -4


@given(matrices(3, 3), matrices(3, 3))
def test_det_multiplicative(A, B):
    assert det(A @ B) == det(A) * det(B)


@given(matrices(3, 4))
def test_rank_nullity(M):
    ks = kernel_basis(M)
    assert rank(M) + len(ks) == 4
    assert all(not any(M @ v) for v in ks)
    assert rank(M) == rank(M.transpose())


@settings(max_examples=50)
@given(matrices(3, 3))
def test_inverse_roundtrip(M):
    if det(M):
        assert M @ inverse(M) == QMatrix.identity(3)
