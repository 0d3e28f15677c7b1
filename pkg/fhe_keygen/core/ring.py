"""
Polynomial arithmetic in Z[x] and in the negacyclic ring Z[x]/(x^n + 1).

Coefficients are little-endian (index i is the coefficient of x^i) and are
plain Python integers. Polynomials are immutable values, so they can be shared
freely between threads.

Author: fhe-keygen developers
Version: 1.0
"""

import logging
from dataclasses import dataclass, field
from typing import Iterable, List, Sequence, Tuple

from .errors import InvalidParametersError

logger = logging.getLogger(__name__)

# Product length at or above which coefficients are packed into one integer.
DEFAULT_KRONECKER_THRESHOLD = 16
_kronecker_threshold = DEFAULT_KRONECKER_THRESHOLD


def set_kronecker_threshold(threshold: int) -> None:
    """Set the operand length at which multiply() switches to Kronecker packing."""
    global _kronecker_threshold
    if threshold < 1:
        raise InvalidParametersError("kronecker threshold must be positive")
    _kronecker_threshold = threshold


def _strip(coeffs: Iterable[int]) -> Tuple[int, ...]:
    values = list(coeffs)
    while values and values[-1] == 0:
        values.pop()
    return tuple(values)


@dataclass(frozen=True)
class RingParams:
    """Parameters of the quotient ring Z[x]/(x^n + 1)."""

    n: int

    def __post_init__(self) -> None:
        if not isinstance(self.n, int) or self.n < 2 or self.n & (self.n - 1):
            raise InvalidParametersError(
                f"ring degree must be a power of two >= 2, got {self.n}"
            )

    @property
    def log_n(self) -> int:
        return self.n.bit_length() - 1


@dataclass(frozen=True)
class Poly:
    """An integer polynomial; the zero polynomial has no coefficients."""

    coeffs: Tuple[int, ...] = field(default=())

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", _strip(int(c) for c in self.coeffs))

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[int]) -> "Poly":
        return cls(tuple(coeffs))

    @classmethod
    def constant(cls, value: int) -> "Poly":
        return cls((value,))

    @classmethod
    def monomial(cls, k: int, value: int = 1) -> "Poly":
        if k < 0:
            raise InvalidParametersError("monomial exponent must be nonnegative")
        return cls((0,) * k + (value,))

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def padded(self, n: int) -> List[int]:
        """Coefficient list of length n (the polynomial must fit)."""
        if len(self.coeffs) > n:
            raise InvalidParametersError(
                f"polynomial of degree {self.degree} does not fit in {n} coefficients"
            )
        return list(self.coeffs) + [0] * (n - len(self.coeffs))

    def conjugate(self) -> "Poly":
        """v(-x)."""
        return Poly(tuple(-c if i & 1 else c for i, c in enumerate(self.coeffs)))

    def shift(self, k: int, params: RingParams) -> "Poly":
        """x^k * p mod (x^n + 1)."""
        return reduce_negacyclic(Poly((0,) * k + self.coeffs), params)

    def __add__(self, other: "Poly") -> "Poly":
        size = max(len(self.coeffs), len(other.coeffs))
        return Poly(
            tuple(self.coefficient(i) + other.coefficient(i) for i in range(size))
        )

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __neg__(self) -> "Poly":
        return Poly(tuple(-c for c in self.coeffs))

    def __mul__(self, other: "Poly") -> "Poly":
        return Poly(tuple(multiply(self.coeffs, other.coeffs)))

    def __len__(self) -> int:
        return len(self.coeffs)

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}" if i == 0 else f"{c}*x^{i}")
        return " + ".join(terms)


def schoolbook_mul(a: Sequence[int], b: Sequence[int]) -> List[int]:
    """Plain O(len(a) * len(b)) product of coefficient lists."""
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return out


def _slot_bytes(a: Sequence[int], b: Sequence[int]) -> int:
    bound = (
        max(abs(c) for c in a).bit_length()
        + max(abs(c) for c in b).bit_length()
        + min(len(a), len(b)).bit_length()
        + 1
    )
    return bound // 8 + 1


def _pack(coeffs: Sequence[int], width: int) -> int:
    half = 1 << (8 * width - 1)
    raw = b"".join((c + half).to_bytes(width, "little") for c in coeffs)
    offset = int.from_bytes((b"\x00" * (width - 1) + b"\x80") * len(coeffs), "little")
    return int.from_bytes(raw, "little") - offset


def _unpack(value: int, count: int, width: int) -> List[int]:
    half = 1 << (8 * width - 1)
    offset = int.from_bytes((b"\x00" * (width - 1) + b"\x80") * count, "little")
    raw = (value + offset).to_bytes(count * width, "little")
    return [
        int.from_bytes(raw[i * width : (i + 1) * width], "little") - half
        for i in range(count)
    ]


def kronecker_mul(a: Sequence[int], b: Sequence[int]) -> List[int]:
    """
    Product of coefficient lists by Kronecker substitution.

    Both operands are evaluated at 2^(8*width), where the slot width leaves
    room for the largest possible product coefficient plus a sign bit, so a
    single big-integer multiplication carries the whole convolution.
    """
    if not a or not b:
        return []
    width = _slot_bytes(a, b)
    product = _pack(a, width) * _pack(b, width)
    return _unpack(product, len(a) + len(b) - 1, width)


def multiply(a: Sequence[int], b: Sequence[int]) -> List[int]:
    """Product of coefficient lists, choosing the algorithm by operand size."""
    if min(len(a), len(b)) >= _kronecker_threshold:
        return kronecker_mul(a, b)
    return schoolbook_mul(a, b)


def negacyclic_fold(coeffs: Sequence[int], n: int) -> List[int]:
    """Fold a coefficient list of any length modulo x^n + 1 (x^n = -1)."""
    out = [0] * n
    for k, c in enumerate(coeffs):
        if c:
            q, r = divmod(k, n)
            if q & 1:
                out[r] -= c
            else:
                out[r] += c
    return out


def negacyclic_mul(a: Sequence[int], b: Sequence[int], n: int) -> List[int]:
    """Product of two length-n coefficient lists in Z[x]/(x^n + 1)."""
    return negacyclic_fold(multiply(a, b), n)


def reduce_negacyclic(p: Poly, params: RingParams) -> Poly:
    """
    Reduce p modulo x^n + 1.

    Args:
        p: Polynomial of any degree
        params: Ring parameters

    Returns:
        The unique q of degree < n with q = p (mod x^n + 1)
    """
    return Poly(tuple(negacyclic_fold(p.coeffs, params.n)))


def mul_mod(a: Poly, b: Poly, params: RingParams) -> Poly:
    """
    Multiply in Z[x]/(x^n + 1).

    Raises:
        InvalidParametersError: If either operand has degree >= n
    """
    if a.degree >= params.n or b.degree >= params.n:
        raise InvalidParametersError(
            f"operands must have degree < {params.n}, got {a.degree} and {b.degree}"
        )
    return Poly(tuple(negacyclic_fold(multiply(a.coeffs, b.coeffs), params.n)))


def eval_mod(p: Poly, point: int, modulus: int) -> int:
    """
    Evaluate p(point) modulo modulus by Horner's rule.

    Returns:
        The value in [0, modulus)

    Raises:
        InvalidParametersError: If modulus <= 0
    """
    if modulus <= 0:
        raise InvalidParametersError(f"modulus must be positive, got {modulus}")
    point = point % modulus
    acc = 0
    for c in reversed(p.coeffs):
        acc = (acc * point + c) % modulus
    return acc


def rotation_basis(v: Poly, params: RingParams) -> List[List[int]]:
    """
    Rotation basis of the ideal lattice generated by v.

    Row i holds the coefficients of x^i * v(x) mod (x^n + 1): each row is the
    previous one shifted right by one place with the wrapped coefficient
    negated (anticirculant).
    """
    row = v.padded(params.n)
    rows = [row]
    for _ in range(params.n - 1):
        row = [-row[-1]] + row[:-1]
        rows.append(row)
    return rows


def cyclotomic(params: RingParams) -> Poly:
    """The modulus x^n + 1 itself."""
    return Poly((1,) + (0,) * (params.n - 1) + (1,))


def galois_conjugate(coeffs: Sequence[int]) -> List[int]:
    """Coefficients of a(-x)."""
    return [-c if i & 1 else c for i, c in enumerate(coeffs)]


def field_norm(coeffs: Sequence[int]) -> List[int]:
    """
    Project a in Z[x]/(x^m + 1) onto Z[y]/(y^(m/2) + 1).

    With a(x) = ae(x^2) + x*ao(x^2), the result is ae(y)^2 - y*ao(y)^2, the
    polynomial with norm(a)(x^2) = a(x)*a(-x) mod (x^m + 1).

    Args:
        coeffs: Coefficient list of even length m

    Returns:
        Coefficient list of length m/2
    """
    half = len(coeffs) // 2
    ae = list(coeffs[0::2])
    ao = list(coeffs[1::2])
    ae_squared = negacyclic_mul(ae, ae, half)
    ao_squared = negacyclic_mul(ao, ao, half)
    res = ae_squared
    for i in range(half - 1):
        res[i + 1] -= ao_squared[i]
    res[0] += ao_squared[half - 1]
    return res
