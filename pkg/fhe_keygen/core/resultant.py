"""
Resultants against x^n + 1 and coefficients of the scaled inverse w(x).

For a generator v coprime to f = x^n + 1 there is a unique integer polynomial
w with v*w = d mod f, where d = |Res(v, f)| is the determinant of the ideal
lattice. The fast path walks the norm tower

    v_0 = v,   v_{j+1}(x^2) = v_j(x) * v_j(-x)  mod (x^(n/2^j) + 1)

down to a constant c with |c| = d. Multiplying the conjugates back together
gives v * prod_j v_j(-x^(2^j)) = c, so w = sign(c) * prod_j v_j(-x^(2^j)).
Single coefficients of that product are extracted without forming it.

The Sylvester determinant and an exact linear solve serve as oracles.

Author: fhe-keygen developers
Version: 1.0
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Sequence, Tuple

from .errors import InvalidParametersError, NotCoprimeError, SingularMatrixError
from .linalg import bareiss_determinant, bareiss_solve
from .ring import Poly, RingParams, field_norm, galois_conjugate, negacyclic_mul
from .ring import rotation_basis

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ResultantOutput:
    """Determinant d together with the requested coefficients of w(x)."""

    d: int
    w_coeffs: Dict[int, int] = field(default_factory=dict)

    def w(self, index: int) -> int:
        return self.w_coeffs[index]


def sylvester_matrix(a: Poly, b: Poly) -> List[List[int]]:
    """
    Sylvester matrix of a and b.

    Rows are a, x*a, ..., x^(deg b - 1)*a followed by b, x*b, ...,
    x^(deg a - 1)*b, each written little-endian over deg a + deg b columns.
    """
    m, k = a.degree, b.degree
    size = m + k
    rows = []
    for i in range(k):
        rows.append([0] * i + list(a.coeffs) + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + list(b.coeffs) + [0] * (size - k - 1 - i))
    return rows


def sylvester_resultant(a: Poly, b: Poly) -> int:
    """
    Res(a, b) as the exact determinant of the Sylvester matrix.

    Raises:
        InvalidParametersError: If either polynomial is zero
    """
    if a.is_zero() or b.is_zero():
        raise InvalidParametersError("resultant of the zero polynomial is undefined")
    return bareiss_determinant(sylvester_matrix(a, b))


def _check_generator(v: Poly, params: RingParams) -> None:
    if v.is_zero():
        raise InvalidParametersError("the zero polynomial does not generate a lattice")
    if v.degree >= params.n:
        raise InvalidParametersError(
            f"generator must have degree < {params.n}, got {v.degree}"
        )


def norm_tower(v: Poly, params: RingParams) -> List[List[int]]:
    """
    Successive field norms of v down to Z.

    Returns:
        Coefficient lists of lengths n, n/2, ..., 1; the last holds the
        signed norm c of v, with |c| = |Res(v, x^n + 1)|
    """
    _check_generator(v, params)
    levels = [v.padded(params.n)]
    while len(levels[-1]) > 1:
        levels.append(field_norm(levels[-1]))
    return levels


def _tower_coefficient(levels: Sequence[Sequence[int]], index: int) -> int:
    """Coefficient of x^index in prod_j v_j(-x^(2^j)) mod (x^n + 1)."""
    n = len(levels[0])
    # x^-index = -x^(n - index) in the negacyclic ring
    acc = [0] * n
    if index == 0:
        acc[0] = 1
    else:
        acc[n - index] = -1
    for level in levels[:-1]:
        m = len(level)
        product = negacyclic_mul(acc, galois_conjugate(level), m)
        # later factors only carry exponents divisible by 2 in this variable
        acc = product[0::2]
    return acc[0]


def resultant_and_w(
    v: Poly, params: RingParams, indices: Iterable[int] = (0,)
) -> ResultantOutput:
    """
    Compute d = |Res(v, x^n + 1)| and the requested coefficients of w(x).

    Args:
        v: Generator of degree < n
        params: Ring parameters
        indices: Coefficient indices of w to return

    Returns:
        ResultantOutput holding d and {i: w_i}

    Raises:
        NotCoprimeError: If Res(v, x^n + 1) = 0
    """
    wanted = sorted(set(indices))
    for i in wanted:
        if not 0 <= i < params.n:
            raise InvalidParametersError(f"coefficient index {i} out of range")

    levels = norm_tower(v, params)
    c = levels[-1][0]
    if c == 0:
        raise NotCoprimeError("generator shares a factor with x^n + 1")
    sign = 1 if c > 0 else -1

    coeffs = {i: sign * _tower_coefficient(levels, i) for i in wanted}
    logger.debug(
        f"Resultant for n={params.n}: {abs(c).bit_length()} bits, "
        f"coefficients {wanted}"
    )
    return ResultantOutput(d=abs(c), w_coeffs=coeffs)


def scaled_inverse(v: Poly, params: RingParams) -> Tuple[int, Poly]:
    """
    d and the whole of w(x), rebuilt up the norm tower.

    At each level w_j(x) = w_{j+1}(x^2) * v_j(-x) mod (x^m + 1), starting from
    w_k = 1 at the constant level.

    Raises:
        NotCoprimeError: If Res(v, x^n + 1) = 0
    """
    levels = norm_tower(v, params)
    c = levels[-1][0]
    if c == 0:
        raise NotCoprimeError("generator shares a factor with x^n + 1")
    acc = [1]
    for level in reversed(levels[:-1]):
        m = len(level)
        lifted = [0] * m
        lifted[0::2] = acc
        acc = negacyclic_mul(lifted, galois_conjugate(level), m)
    sign = 1 if c > 0 else -1
    return abs(c), Poly(tuple(sign * x for x in acc))


def w_coefficient(v: Poly, params: RingParams, index: int) -> ResultantOutput:
    """Per-index entry point: d and the single coefficient w_index."""
    return resultant_and_w(v, params, (index,))


def resultant(v: Poly, params: RingParams) -> int:
    """d = |Res(v, x^n + 1)| alone."""
    return resultant_and_w(v, params, ()).d


def w_oracle(v: Poly, params: RingParams) -> Poly:
    """
    Full w(x) by exact linear algebra.

    Solves rotation_basis(v)^T * w = (d, 0, ..., 0)^T, i.e. the combination
    of the rows x^i*v whose sum is the constant d.

    Raises:
        NotCoprimeError: If the rotation basis is singular
    """
    _check_generator(v, params)
    basis = rotation_basis(v, params)
    transposed = [list(col) for col in zip(*basis)]
    e0 = [1] + [0] * (params.n - 1)
    try:
        det, scaled = bareiss_solve(transposed, e0)
    except SingularMatrixError as e:
        raise NotCoprimeError("generator shares a factor with x^n + 1") from e
    sign = 1 if det > 0 else -1
    return Poly(tuple(sign * c for c in scaled))
