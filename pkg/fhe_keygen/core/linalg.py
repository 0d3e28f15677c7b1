"""
Exact integer linear algebra.

Fraction-free (Bareiss) elimination keeps every intermediate value an integer:
each division performed is exact, so determinants and Cramer-scaled solutions
come out without rationals or rounding. Intended for oracle-scale matrices.
"""

import logging
from typing import List, Sequence, Tuple

from .errors import InvalidParametersError, SingularMatrixError

logger = logging.getLogger(__name__)

Matrix = List[List[int]]


def _copy_square(matrix: Sequence[Sequence[int]]) -> Matrix:
    rows = [list(row) for row in matrix]
    n = len(rows)
    for row in rows:
        if len(row) != n:
            raise InvalidParametersError("matrix must be square")
    return rows


def _eliminate(rows: Matrix, n: int) -> int:
    """
    In-place Bareiss forward elimination over the first n columns.

    Rows may be longer than n (augmented columns are carried along).

    Returns:
        The sign of the row permutation, or 0 when the matrix is singular
    """
    width = len(rows[0]) if rows else 0
    sign = 1
    prev = 1
    for k in range(n):
        pivot = next((p for p in range(k, n) if rows[p][k] != 0), None)
        if pivot is None:
            return 0
        if pivot != k:
            rows[k], rows[pivot] = rows[pivot], rows[k]
            sign = -sign
        rk = rows[k]
        akk = rk[k]
        for i in range(k + 1, n):
            ri = rows[i]
            aik = ri[k]
            for j in range(k + 1, width):
                ri[j] = (ri[j] * akk - aik * rk[j]) // prev
            ri[k] = 0
        prev = akk
    return sign


def bareiss_determinant(matrix: Sequence[Sequence[int]]) -> int:
    """
    Exact signed determinant of a square integer matrix.

    Args:
        matrix: Square matrix given as a sequence of rows

    Returns:
        det(matrix); the empty matrix has determinant 1
    """
    rows = _copy_square(matrix)
    n = len(rows)
    if n == 0:
        return 1
    sign = _eliminate(rows, n)
    if sign == 0:
        return 0
    return sign * rows[n - 1][n - 1]


def bareiss_solve(
    matrix: Sequence[Sequence[int]], rhs: Sequence[int]
) -> Tuple[int, List[int]]:
    """
    Solve matrix * x = rhs exactly.

    Args:
        matrix: Nonsingular square integer matrix
        rhs: Integer right-hand side

    Returns:
        (det, scaled) where det = det(matrix) and scaled = det * x is integral

    Raises:
        SingularMatrixError: If the matrix is singular
    """
    rows = _copy_square(matrix)
    n = len(rows)
    if len(rhs) != n:
        raise InvalidParametersError("right-hand side has the wrong length")
    for row, b in zip(rows, rhs):
        row.append(b)

    sign = _eliminate(rows, n)
    if sign == 0:
        raise SingularMatrixError("matrix is singular")
    det = sign * rows[n - 1][n - 1]

    # det * x_i is an integer by Cramer's rule, so every division is exact.
    scaled = [0] * n
    for i in range(n - 1, -1, -1):
        acc = det * rows[i][n]
        for j in range(i + 1, n):
            acc -= rows[i][j] * scaled[j]
        q, r = divmod(acc, rows[i][i])
        if r:
            raise ArithmeticError("inexact division in fraction-free back substitution")
        scaled[i] = q
    logger.debug(f"Solved {n}x{n} system, determinant bit length {det.bit_length()}")
    return det, scaled
