"""
Unit tests for exact linear algebra.
"""

import pytest

from cyclo import ONE, ZERO, Cyclo, root_of_unity
from linalg import (
    coordinates,
    determinant,
    echelon_basis,
    from_dense,
    identity,
    inverse,
    matmul,
    nullspace,
    rank,
    rref,
    solve,
    sparse_add,
    sparse_scale,
    to_dense,
    transpose,
)
from validation import GradingError, NotInvertibleError


def mat(rows):
    return [[Cyclo.coerce(x) for x in row] for row in rows]


@pytest.mark.unit
class TestDenseMatrices:
    """Test dense matrix operations."""

    def test_matmul_identity(self):
        """Test that the identity is neutral."""
        a = mat([[1, 2], [3, 4]])
        assert matmul(a, identity(2)) == a
        assert matmul(identity(2), a) == a

    def test_matmul_shape_mismatch(self):
        """Test that mismatched inner dimensions raise a GradingError."""
        with pytest.raises(GradingError) as exc_info:
            matmul(mat([[1, 2, 3]]), mat([[1, 0], [0, 1]]))
        assert "(1, 3)" in str(exc_info.value)
        with pytest.raises(GradingError):
            matmul([], identity(2))

    def test_transpose(self):
        """Test transposition."""
        assert transpose(mat([[1, 2, 3]])) == mat([[1], [2], [3]])
        assert transpose([]) == []

    def test_rref_and_rank(self):
        """Test reduced row echelon form of a rank 1 matrix."""
        reduced, pivots = rref(mat([[2, 4], [1, 2]]))
        assert pivots == [0]
        assert reduced[0] == mat([[1, 2]])[0]
        assert rank(mat([[1, 0], [0, 1]])) == 2

    def test_nullspace(self):
        """Test the right kernel."""
        basis = nullspace(mat([[1, 1]]))
        assert basis == mat([[-1, 1]])
        assert len(nullspace([], 3)) == 3

    def test_solve(self):
        """Test solving a consistent system."""
        x = solve(mat([[1, 1], [1, -1]]), mat([[3, 1]])[0])
        assert x == mat([[2, 1]])[0]

    def test_solve_inconsistent(self):
        """Test that an inconsistent system raises."""
        with pytest.raises(NotInvertibleError):
            solve(mat([[1, 1], [1, 1]]), mat([[1, 2]])[0])

    def test_inverse(self):
        """Test matrix inversion over a cyclotomic field."""
        i = root_of_unity(4, 1)
        a = [[ONE, i], [ZERO, ONE]]
        assert matmul(a, inverse(a)) == identity(2)

    def test_singular_inverse(self):
        """Test that a singular matrix raises."""
        with pytest.raises(NotInvertibleError):
            inverse(mat([[1, 2], [2, 4]]))

    def test_determinant(self):
        """Test determinants, including a row swap."""
        assert determinant(mat([[1, 2], [3, 4]])) == -2
        assert determinant(mat([[0, 1], [1, 0]])) == -1
        assert determinant(mat([[1, 2], [2, 4]])) == 0


@pytest.mark.unit
class TestSparseVectors:
    """Test sparse vector helpers."""

    def test_sparse_add_cancels(self):
        """Test that cancelling entries are dropped."""
        u = {0: ONE, 2: Cyclo.rational(3)}
        v = {0: ONE}
        assert sparse_add(u, v, Cyclo.rational(-1)) == {2: Cyclo.rational(3)}

    def test_sparse_scale(self):
        """Test scaling, including by zero."""
        assert sparse_scale({1: ONE}, Cyclo.rational(2)) == {1: Cyclo.rational(2)}
        assert sparse_scale({1: ONE}, ZERO) == {}

    def test_dense_conversion(self):
        """Test conversion between sparse and dense forms."""
        v = {1: ONE}
        assert to_dense(v, 3) == [ZERO, ONE, ZERO]
        assert from_dense(to_dense(v, 3)) == v

    def test_echelon_coordinates(self):
        """Test coordinates in an echelon basis."""
        basis, pivots = echelon_basis([{0: ONE, 1: ONE}, {1: ONE, 2: ONE}], 3)
        assert len(basis) == 2
        target = {0: ONE, 1: Cyclo.rational(2), 2: ONE}
        coords = coordinates(target, basis, pivots)
        assert coords is not None
        assert coordinates({2: ONE, 0: Cyclo.rational(5)}, basis, pivots) is None
