"""Tests for polynomial arithmetic in Z[x] and Z[x]/(x^n + 1)."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fhe_keygen.core.errors import InvalidParametersError
from fhe_keygen.core.ring import (
    Poly,
    RingParams,
    eval_mod,
    field_norm,
    galois_conjugate,
    kronecker_mul,
    mul_mod,
    multiply,
    negacyclic_mul,
    reduce_negacyclic,
    rotation_basis,
    schoolbook_mul,
    set_kronecker_threshold,
)

N2 = RingParams(2)
N4 = RingParams(4)
N8 = RingParams(8)

coeff_lists = st.lists(st.integers(min_value=-(2**70), max_value=2**70), max_size=40)


def ring_elements(n: int, bits: int = 16):
    bound = 2**bits
    return st.lists(
        st.integers(min_value=-bound, max_value=bound), min_size=n, max_size=n
    ).map(lambda c: Poly(tuple(c)))


class TestRingParams:
    @pytest.mark.parametrize("n", [2, 4, 1024, 32768])
    def test_power_of_two_accepted(self, n):
        assert RingParams(n).n == n

    @pytest.mark.parametrize("n", [0, 1, 3, 6, 12, -4])
    def test_rejects_other_degrees(self, n):
        with pytest.raises(InvalidParametersError):
            RingParams(n)

    def test_log_n(self):
        assert RingParams(1024).log_n == 10


class TestPoly:
    def test_trailing_zeros_are_stripped(self):
        assert Poly((1, 2, 0, 0)).coeffs == (1, 2)
        assert Poly((0, 0)).is_zero()

    def test_degree(self):
        assert Poly(()).degree == -1
        assert Poly.constant(7).degree == 0
        assert Poly.monomial(5).degree == 5

    def test_padded(self):
        assert Poly((1, 2)).padded(4) == [1, 2, 0, 0]
        with pytest.raises(InvalidParametersError):
            Poly((1, 2, 3)).padded(2)

    def test_arithmetic(self):
        a, b = Poly((1, 2)), Poly((3, 0, 1))
        assert a + b == Poly((4, 2, 1))
        assert a - a == Poly(())
        assert a * b == Poly((3, 6, 1, 2))

    def test_conjugate(self):
        assert Poly((1, 2, 3, 4)).conjugate() == Poly((1, -2, 3, -4))

    def test_shift_wraps_with_sign(self):
        assert Poly((2, 1)).shift(1, N2) == Poly((-1, 2))

    def test_str(self):
        assert str(Poly(())) == "0"
        assert str(Poly((2, 0, -1))) == "2 + -1*x^2"


class TestReduceNegacyclic:
    def test_x_squared(self):
        assert reduce_negacyclic(Poly.monomial(2), N2) == Poly.constant(-1)

    def test_x_cubed_plus_x(self):
        assert reduce_negacyclic(Poly((0, 1, 0, 1)), N2).is_zero()

    def test_norm_of_x_plus_2(self):
        p = Poly((2, 1)) * Poly((2, -1))
        assert p == Poly((4, 0, -1))
        assert reduce_negacyclic(p, N2) == Poly.constant(5)

    def test_high_powers_alternate_sign(self):
        # x^4 = 1 and x^6 = -x^2 modulo x^2 + 1
        assert reduce_negacyclic(Poly.monomial(4), N2) == Poly.constant(1)
        assert reduce_negacyclic(Poly.monomial(6, 3), N4) == Poly((0, 0, -3))

    @given(st.lists(st.integers(-1000, 1000), max_size=30))
    def test_idempotent(self, coeffs):
        once = reduce_negacyclic(Poly(tuple(coeffs)), N8)
        assert once.degree < 8
        assert reduce_negacyclic(once, N8) == once


class TestMultiplication:
    @settings(deadline=None)
    @given(coeff_lists, coeff_lists)
    def test_kronecker_matches_schoolbook(self, a, b):
        assert kronecker_mul(a, b) == schoolbook_mul(a, b)

    def test_kronecker_with_zero_slots(self):
        assert kronecker_mul([0, 0, 5], [-3, 0]) == [0, 0, -15, 0]

    def test_threshold_switch_gives_same_product(self):
        a = list(range(-20, 20))
        b = [3**k for k in range(25)]
        expected = schoolbook_mul(a, b)
        set_kronecker_threshold(1)
        assert multiply(a, b) == expected
        set_kronecker_threshold(10**6)
        assert multiply(a, b) == expected

    def test_threshold_must_be_positive(self):
        with pytest.raises(InvalidParametersError):
            set_kronecker_threshold(0)

    def test_mul_mod_examples(self):
        b = Poly((7, -3))
        assert mul_mod(Poly.constant(1), b, N2) == b
        assert mul_mod(Poly((2, 1)), Poly((2, -1)), N2) == Poly.constant(5)
        assert mul_mod(Poly.monomial(1), Poly.monomial(1), N2) == Poly.constant(-1)

    def test_mul_mod_rejects_degree_n(self):
        with pytest.raises(InvalidParametersError):
            mul_mod(Poly.monomial(2), Poly.constant(1), N2)

    @given(ring_elements(8), ring_elements(8))
    def test_commutative(self, a, b):
        assert mul_mod(a, b, N8) == mul_mod(b, a, N8)

    @given(ring_elements(8), ring_elements(8), ring_elements(8))
    def test_associative(self, a, b, c):
        left = mul_mod(a, mul_mod(b, c, N8), N8)
        right = mul_mod(mul_mod(a, b, N8), c, N8)
        assert left == right

    @given(ring_elements(8), ring_elements(8))
    def test_negacyclic_mul_matches_reduction(self, a, b):
        expected = reduce_negacyclic(a * b, N8).padded(8)
        assert negacyclic_mul(a.padded(8), b.padded(8), 8) == expected


class TestEvalMod:
    def test_examples(self):
        assert eval_mod(Poly((1, 0, 1)), 3, 5) == 0
        assert eval_mod(Poly(()), 12, 7) == 0
        assert eval_mod(Poly((2, 1)), 3, 5) == 0

    def test_representative_is_nonnegative(self):
        assert eval_mod(Poly.constant(-1), 0, 7) == 6

    @pytest.mark.parametrize("modulus", [0, -5])
    def test_rejects_nonpositive_modulus(self, modulus):
        with pytest.raises(InvalidParametersError):
            eval_mod(Poly((1,)), 2, modulus)

    @given(ring_elements(2), ring_elements(2))
    def test_multiplicative_at_root_of_x2_plus_1(self, a, b):
        # 3^2 = -1 (mod 5)
        lhs = eval_mod(mul_mod(a, b, N2), 3, 5)
        assert lhs == eval_mod(a, 3, 5) * eval_mod(b, 3, 5) % 5


class TestRotationBasis:
    def test_two_by_two(self):
        assert rotation_basis(Poly((2, 1)), N2) == [[2, 1], [-1, 2]]

    @pytest.mark.parametrize("n", [2, 4, 16])
    def test_unit_gives_identity(self, n):
        basis = rotation_basis(Poly.constant(1), RingParams(n))
        assert basis == [[int(i == j) for j in range(n)] for i in range(n)]

    def test_second_row_is_signed_shift(self):
        basis = rotation_basis(Poly((10, 11, 12, 13)), N4)
        assert basis[1] == [-13, 10, 11, 12]

    @given(ring_elements(8, bits=8))
    def test_rows_are_shifts(self, v):
        basis = rotation_basis(v, N8)
        for i, row in enumerate(basis):
            assert Poly(tuple(row)) == v.shift(i, N8)

    @given(ring_elements(8, bits=8), st.integers(0, 7))
    def test_shift_composition(self, v, j):
        basis = rotation_basis(v, N8)
        shifted = rotation_basis(v.shift(j, N8), N8)
        for i in range(8 - j):
            assert basis[i + j] == shifted[i]


class TestFieldNorm:
    @given(ring_elements(8))
    def test_norm_is_product_with_conjugate(self, a):
        coeffs = a.padded(8)
        product = negacyclic_mul(coeffs, galois_conjugate(coeffs), 8)
        norm = field_norm(coeffs)
        assert product[1::2] == [0] * 4
        assert product[0::2] == norm

    def test_constant_level(self):
        assert field_norm([2, 1]) == [5]
