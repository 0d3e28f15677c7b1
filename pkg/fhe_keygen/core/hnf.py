"""
Hermite Normal Form oracle and the structural predicates of ideal lattices.

Matrices are row bases: the lattice is the integer span of the rows and the
HNF is lower triangular with a positive diagonal and each entry left of the
diagonal reduced into [0, diagonal of its column). Everything here is exact
and meant for small dimensions only.
"""

import logging
from dataclasses import dataclass
from functools import reduce
from itertools import product
from math import gcd
from typing import List, Optional, Sequence, Tuple

from .errors import HnfStructureError, InvalidParametersError, SingularMatrixError
from .linalg import bareiss_determinant
from .ring import Poly, eval_mod

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class HnfMatrix:
    """A square matrix in Hermite Normal Form."""

    rows: Tuple[Tuple[int, ...], ...]

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "HnfMatrix":
        """
        Build an HnfMatrix, checking the normal-form invariants.

        Raises:
            InvalidParametersError: If the rows are not in HNF
        """
        matrix = cls(tuple(tuple(int(x) for x in row) for row in rows))
        n = matrix.size
        for i, row in enumerate(matrix.rows):
            if len(row) != n:
                raise InvalidParametersError("HNF must be square")
            if row[i] <= 0:
                raise InvalidParametersError(f"diagonal entry {i} is not positive")
            if any(row[j] != 0 for j in range(i + 1, n)):
                raise InvalidParametersError(
                    f"row {i} has entries right of the diagonal"
                )
            for j in range(i):
                if not 0 <= row[j] < matrix.rows[j][j]:
                    raise InvalidParametersError(
                        f"entry ({i}, {j}) is not reduced modulo the diagonal"
                    )
        return matrix

    @property
    def size(self) -> int:
        return len(self.rows)

    def diagonal(self) -> List[int]:
        return [self.rows[i][i] for i in range(self.size)]

    def row_polynomial(self, i: int) -> Poly:
        """Row i read as a polynomial (coefficient j belongs to x^j)."""
        return Poly(self.rows[i])

    def to_lists(self) -> List[List[int]]:
        return [list(row) for row in self.rows]


def lattice_determinant(basis: Sequence[Sequence[int]]) -> int:
    """
    |det(B)| of a full-rank basis.

    Raises:
        SingularMatrixError: If the basis is singular
    """
    det = bareiss_determinant(basis)
    if det == 0:
        raise SingularMatrixError("basis is singular")
    return abs(det)


def _combine_column(rows: List[List[int]], col: int) -> Optional[List[int]]:
    """
    Euclid on the rows' entries in column col.

    Afterwards exactly one row (returned and removed from ``rows``) has a
    nonzero entry in that column, and it is positive.
    """
    while True:
        active = [r for r in rows if r[col] != 0]
        if not active:
            return None
        pivot = min(active, key=lambda r: abs(r[col]))
        if len(active) == 1:
            break
        for r in active:
            if r is pivot:
                continue
            q = r[col] // pivot[col]
            for j in range(col + 1):
                r[j] -= q * pivot[j]
    rows.remove(pivot)
    if pivot[col] < 0:
        pivot = [-x for x in pivot]
    return pivot


def hnf_of(basis: Sequence[Sequence[int]]) -> HnfMatrix:
    """
    Hermite Normal Form of a nonsingular square integer basis.

    With D = |det(B)| every vector D*e_j lies in the lattice, so row entries
    may be reduced modulo D at any time as long as D*e_j joins the generators
    when column j is processed. Columns are cleared from the last to the
    first, then entries left of the diagonal are reduced.

    Raises:
        SingularMatrixError: If the basis is singular
    """
    n = len(basis)
    big_d = lattice_determinant(basis)
    work = [[x % big_d for x in row] for row in basis]
    pivots: List[Optional[List[int]]] = [None] * n

    for col in range(n - 1, -1, -1):
        work.append([0] * col + [big_d] + [0] * (n - col - 1))
        pivot = _combine_column(work, col)
        if pivot is None:
            raise SingularMatrixError("basis is singular")
        for j in range(col):
            pivot[j] %= big_d
        pivots[col] = pivot
        work = [[x % big_d for x in r] for r in work]
        work = [r for r in work if any(r)]

    rows = [list(p) for p in pivots if p is not None]
    for i in range(n):
        for j in range(i - 1, -1, -1):
            q = rows[i][j] // rows[j][j]
            if q:
                for k in range(j + 1):
                    rows[i][k] -= q * rows[j][k]

    h = HnfMatrix.from_rows(rows)
    logger.debug(f"HNF of {n}x{n} basis, diagonal {h.diagonal()}")
    return h


def is_simple_hnf(h: HnfMatrix) -> bool:
    """True iff every diagonal entry after the first equals 1."""
    return all(x == 1 for x in h.diagonal()[1:])


def is_primitive(x_coords: Sequence[int]) -> bool:
    """
    True iff the coordinate vector has gcd 1.

    Raises:
        InvalidParametersError: For the zero vector
    """
    if not any(x_coords):
        raise InvalidParametersError("the zero vector is never primitive")
    return reduce(gcd, x_coords, 0) == 1


def check_divisibility_structure(h: HnfMatrix) -> bool:
    """
    True iff h_{i,i} divides h_{j,l} for all l <= j <= i.

    In particular the diagonal is a division chain h_{n,n} | ... | h_{1,1}.
    """
    running = 0
    for i, row in enumerate(h.rows):
        running = reduce(gcd, row[: i + 1], running)
        if running % row[i]:
            return False
    return True


def check_root_property(h: HnfMatrix, f: Poly) -> bool:
    """
    Check the root congruences satisfied by the HNF of an ideal lattice.

    With beta = -h_{2,1}/h_{2,2}: H_i(beta) = 0 mod h_{1,1}*h_{i,i}/h_{2,2}
    for every row i >= 2, and f(beta) = 0 mod h_{1,1}/h_{2,2}.

    Raises:
        HnfStructureError: If h_{2,2} does not divide h_{2,1} or h_{1,1}
    """
    if h.size < 2:
        raise InvalidParametersError("root property needs at least two rows")
    h11 = h.rows[0][0]
    h21, h22 = h.rows[1][0], h.rows[1][1]
    if h21 % h22 or h11 % h22:
        raise HnfStructureError("h_{2,2} must divide h_{2,1} and h_{1,1}")
    beta = -(h21 // h22)

    for i in range(1, h.size):
        hii = h.rows[i][i]
        if (h11 * hii) % h22:
            raise HnfStructureError(
                f"h_{{2,2}} does not divide h_{{1,1}}*h_{{{i + 1},{i + 1}}}"
            )
        if eval_mod(h.row_polynomial(i), beta, h11 * hii // h22) != 0:
            return False
    return eval_mod(f, beta, h11 // h22) == 0


def simple_hnf_shape(d: int, r: int, n: int) -> HnfMatrix:
    """
    The simple HNF determined by (d, r): first row (d, 0, ..., 0), then row i
    equal to ([-r^i]_d, e_i).
    """
    rows = [[d] + [0] * (n - 1)]
    power = 1
    for i in range(1, n):
        power = power * r % d
        row = [0] * n
        row[0] = -power % d
        row[i] = 1
        rows.append(row)
    return HnfMatrix.from_rows(rows)


def smallest_constant_multiple(
    basis: Sequence[Sequence[int]], bound: int
) -> Optional[int]:
    """
    Brute-force the smallest positive c with (c, 0, ..., 0) in the lattice.

    Searches integer combinations of the basis rows with coefficients in
    [-bound, bound]; only practical for tiny dimensions.
    """
    n = len(basis)
    best: Optional[int] = None
    for combo in product(range(-bound, bound + 1), repeat=n):
        vec = [sum(c * basis[k][j] for k, c in enumerate(combo)) for j in range(n)]
        if vec[0] > 0 and not any(vec[1:]):
            if best is None or vec[0] < best:
                best = vec[0]
    return best
