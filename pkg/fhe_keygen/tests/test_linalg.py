"""Tests for fraction-free elimination, cross-checked against sympy."""

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from fhe_keygen.core.errors import InvalidParametersError, SingularMatrixError
from fhe_keygen.core.linalg import bareiss_determinant, bareiss_solve


@st.composite
def square_matrices(draw, max_size=6, bound=50):
    n = draw(st.integers(1, max_size))
    entry = st.integers(-bound, bound)
    return [[draw(entry) for _ in range(n)] for _ in range(n)]


class TestDeterminant:
    @pytest.mark.parametrize(
        "matrix, expected",
        [
            ([[2, 1], [-1, 2]], 5),
            ([[1, 0], [0, 1]], 1),
            ([[3, 0], [0, 3]], 9),
            ([[0, 1], [1, 0]], -1),
            ([[1, 2], [2, 4]], 0),
        ],
    )
    def test_examples(self, matrix, expected):
        assert bareiss_determinant(matrix) == expected

    def test_empty_matrix(self):
        assert bareiss_determinant([]) == 1

    def test_needs_pivoting(self):
        assert bareiss_determinant([[0, 0, 1], [0, 2, 0], [3, 0, 0]]) == -6

    def test_rejects_ragged_rows(self):
        with pytest.raises(InvalidParametersError):
            bareiss_determinant([[1, 2], [3]])

    def test_input_not_modified(self):
        matrix = [[0, 1], [1, 0]]
        bareiss_determinant(matrix)
        assert matrix == [[0, 1], [1, 0]]

    @settings(deadline=None)
    @given(square_matrices())
    def test_matches_sympy(self, matrix):
        assert bareiss_determinant(matrix) == sympy.Matrix(matrix).det()

    def test_big_entries(self):
        matrix = [[2**200 + i * j for j in range(4)] for i in range(4)]
        matrix[0][0] += 1
        assert bareiss_determinant(matrix) == sympy.Matrix(matrix).det()


class TestSolve:
    def test_two_by_two(self):
        det, scaled = bareiss_solve([[2, -1], [1, 2]], [1, 0])
        assert det == 5
        assert scaled == [2, -1]

    def test_singular(self):
        with pytest.raises(SingularMatrixError):
            bareiss_solve([[1, 2], [2, 4]], [1, 1])

    def test_wrong_rhs_length(self):
        with pytest.raises(InvalidParametersError):
            bareiss_solve([[1]], [1, 2])

    @settings(deadline=None)
    @given(square_matrices(), st.data())
    def test_scaled_solution(self, matrix, data):
        n = len(matrix)
        rhs = data.draw(st.lists(st.integers(-50, 50), min_size=n, max_size=n))
        det = bareiss_determinant(matrix)
        if det == 0:
            with pytest.raises(SingularMatrixError):
                bareiss_solve(matrix, rhs)
            return
        got_det, scaled = bareiss_solve(matrix, rhs)
        assert got_det == det
        for row, b in zip(matrix, rhs):
            assert sum(a * x for a, x in zip(row, scaled)) == det * b
