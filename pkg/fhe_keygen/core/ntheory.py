"""
Integer number theory helpers.

Python integers already give sign-magnitude arbitrary precision, so the only
things added here are the extended Euclidean algorithm in two flavours (a
plain one for small operands and a Lehmer-accelerated one for the megabit
determinants produced by key generation), a Barrett reducer for repeated
reduction modulo one large number, and the residue conventions used across
the package.
"""

from typing import Optional, Tuple

from .errors import InvalidParametersError, NotInvertibleError

# Width of the leading-bit window used by the Lehmer inner loop.
LEHMER_WINDOW_BITS = 512

# Width of the outer window: its leading bits are reduced exactly by the
# Lehmer loop and the transform is then applied to the full operands.
OUTER_WINDOW_BITS = 16384

# Below this size the Barrett reciprocal is one builtin division.
RECIPROCAL_CUTOFF_BITS = 4096

Transform = Tuple[int, int, int, int]


def extended_gcd(a: int, b: int) -> Tuple[int, int, int]:
    """
    The extended Euclidean algorithm.

    Args:
        a: An integer
        b: An integer

    Returns:
        (g, x, y) with a*x + b*y == g == gcd(a, b) >= 0
    """
    x, next_x = 1, 0
    y, next_y = 0, 1
    g, next_g = a, b
    while next_g:
        q = g // next_g
        x, next_x = next_x, x - q * next_x
        y, next_y = next_y, y - q * next_y
        g, next_g = next_g, g - q * next_g
    if g < 0:
        g, x, y = -g, -x, -y
    return g, x, y


def _lehmer_reduce(x: int, y: int, stop_bits: int) -> Tuple[int, int, Transform]:
    """
    Euclid steps on x >= y >= 0 until y fits in stop_bits bits.

    Returns the reduced pair and the transform (A, B, C, D) with
    x' = A*x + B*y and y' = C*x + D*y.
    """
    M00, M01, M10, M11 = 1, 0, 0, 1

    while y.bit_length() > stop_bits:
        shift = max(x.bit_length() - LEHMER_WINDOW_BITS, 0)
        xh, yh = x >> shift, y >> shift
        A, B, C, D = 1, 0, 0, 1
        while yh + C != 0 and yh + D != 0:
            q = (xh + A) // (yh + C)
            if q != (xh + B) // (yh + D):
                break
            A, C = C, A - q * C
            B, D = D, B - q * D
            xh, yh = yh, xh - q * yh

        if B == 0:
            q, rem = divmod(x, y)
            x, y = y, rem
            M00, M01, M10, M11 = M10, M11, M00 - q * M10, M01 - q * M11
            continue

        x, y = A * x + B * y, C * x + D * y
        M00, M01, M10, M11 = (
            A * M00 + B * M10,
            A * M01 + B * M11,
            C * M00 + D * M10,
            C * M01 + D * M11,
        )
        if y < 0:
            y, M10, M11 = -y, -M10, -M11
        if x < y:
            x, y, M00, M01, M10, M11 = y, x, M10, M11, M00, M01

    return x, y, (M00, M01, M10, M11)


def gcd_and_inverse(a: int, m: int) -> Tuple[int, Optional[int]]:
    """
    Compute gcd(a, m) and, when it is 1, the inverse of a modulo m.

    Lehmer's variant of Euclid: the quotient sequence is simulated on the
    leading bits of both remainders and the resulting 2x2 transform is applied
    to the full numbers in one go. Operands wider than OUTER_WINDOW_BITS go
    through a second level: the leading OUTER_WINDOW_BITS are halved exactly
    by the inner loop, and the transform, applied to the full pair, cuts
    close to half a window off both. It is unimodular, so the gcd and the
    cofactor relation survive even where its last quotients are wrong for the
    full pair. Only the cofactor of ``a`` is carried.

    Args:
        a: Integer to invert
        m: Positive modulus

    Returns:
        (g, inverse) where inverse is in [0, m) or None when g != 1
    """
    if m <= 0:
        raise InvalidParametersError(f"modulus must be positive, got {m}")

    # invariants: sx*a == x (mod m), sy*a == y (mod m), x >= y >= 0
    x, y = m, a % m
    sx, sy = 0, 1

    while y.bit_length() > OUTER_WINDOW_BITS:
        shift = x.bit_length() - OUTER_WINDOW_BITS
        _, _, (A, B, C, D) = _lehmer_reduce(
            x >> shift, y >> shift, OUTER_WINDOW_BITS // 2
        )
        if (A, B, C, D) == (1, 0, 0, 1):
            q, rem = divmod(x, y)
            x, y = y, rem
            sx, sy = sy, sx - q * sy
            continue

        x, y = A * x + B * y, C * x + D * y
        sx, sy = A * sx + B * sy, C * sx + D * sy
        if x < 0:
            x, sx = -x, -sx
        if y < 0:
            y, sy = -y, -sy
        if x < y:
            x, y, sx, sy = y, x, sy, sx

    if y.bit_length() > LEHMER_WINDOW_BITS:
        x, y, (A, B, C, D) = _lehmer_reduce(x, y, LEHMER_WINDOW_BITS)
        sx, sy = A * sx + B * sy, C * sx + D * sy

    while y:
        q, rem = divmod(x, y)
        x, y = y, rem
        sx, sy = sy, sx - q * sy

    if x != 1:
        return x, None
    return 1, sx % m


def inverse_mod(a: int, m: int) -> int:
    """
    Inverse of a modulo m.

    Raises:
        NotInvertibleError: If gcd(a, m) != 1
    """
    g, inverse = gcd_and_inverse(a, m)
    if inverse is None:
        raise NotInvertibleError(f"value is not invertible modulo m (gcd {g})")
    return inverse


def reciprocal(d: int) -> int:
    """
    floor(4**k / d) for k = d.bit_length().

    Newton iteration seeded with the reciprocal of the leading half of d,
    followed by an exact correction whose quotient is a handful of units.
    """
    if d <= 0:
        raise InvalidParametersError(f"divisor must be positive, got {d}")
    k = d.bit_length()
    if k <= RECIPROCAL_CUTOFF_BITS:
        return (1 << (2 * k)) // d

    h = k // 2 + 1
    y = reciprocal(d >> (k - h)) << (k - h)
    power = 1 << (2 * k)
    y += (y * (power - d * y)) >> (2 * k)
    return y + (power - d * y) // d


class BarrettReducer:
    """
    Reduction modulo a fixed modulus by multiplication with its reciprocal.

    Builtin ``%`` divides in quadratic time, which dominates once the modulus
    runs to hundreds of thousands of bits. Here every reduction costs two
    multiplications.
    """

    def __init__(self, modulus: int):
        if modulus <= 0:
            raise InvalidParametersError(f"modulus must be positive, got {modulus}")
        self.modulus = modulus
        self._shift = 2 * modulus.bit_length()
        self._mu = reciprocal(modulus)

    def reduce(self, x: int) -> int:
        """Representative of x in [0, modulus)."""
        if x < 0 or x.bit_length() > self._shift:
            return x % self.modulus
        r = x - ((x * self._mu) >> self._shift) * self.modulus
        while r >= self.modulus:
            r -= self.modulus
        return r

    def mul(self, a: int, b: int) -> int:
        """a * b modulo the modulus."""
        return self.reduce(self.reduce(a) * self.reduce(b))

    def pow(self, base: int, exponent: int) -> int:
        """base ** exponent modulo the modulus, for exponent >= 0."""
        if exponent < 0:
            raise InvalidParametersError(f"exponent must be >= 0, got {exponent}")
        base = self.reduce(base)
        result = 1 % self.modulus
        for bit in bin(exponent)[2:]:
            result = self.reduce(result * result)
            if bit == "1":
                result = self.reduce(result * base)
        return result


def reduce_mod(x: int, m: int) -> int:
    """Representative of x modulo m in [0, m)."""
    if m <= 0:
        raise InvalidParametersError(f"modulus must be positive, got {m}")
    return x % m


def centered(x: int, m: int) -> int:
    """Representative of x modulo m in (-m/2, m/2]."""
    r = reduce_mod(x, m)
    if 2 * r > m:
        r -= m
    return r
