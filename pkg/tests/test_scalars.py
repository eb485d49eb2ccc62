from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from apxlat.scalars import (
    PScaled,
    QuadScalar,
    format_pscaled,
    format_quad,
    format_rational,
    galois_conj,
    is_algebraic_integer,
    is_pisot,
    padic_norm,
    padic_valuation,
    parse_pscaled,
    parse_quad,
    parse_rational,
)

PHI = QuadScalar(Fraction(1, 2), Fraction(1, 2), 5)

rationals = st.fractions(min_value=-(10**6), max_value=10**6, max_denominator=10**4)
small_rationals = st.fractions(min_value=-100, max_value=100, max_denominator=16)


def quad(a, b, d=5):
    return QuadScalar(a, b, d)


class TestGaloisConj:
    def test_zero_fixed(self):
        assert galois_conj(quad(0, 0)) == quad(0, 0)

    def test_phi(self):
        # substitute sqrt(5) -> -sqrt(5)
        assert galois_conj(PHI) == quad(Fraction(1, 2), Fraction(-1, 2))

    def test_rationals_fixed(self):
        assert galois_conj(quad(3, 0, 2)) == 3

    @given(small_rationals, small_rationals)
    def test_involutive(self, a, b):
        x = quad(a, b)
        assert galois_conj(galois_conj(x)) == x

    @given(small_rationals, small_rationals, small_rationals, small_rationals)
    def test_ring_homomorphism(self, a1, b1, a2, b2):
        x, y = quad(a1, b1), quad(a2, b2)
        assert galois_conj(x * y) == galois_conj(x) * galois_conj(y)
        assert galois_conj(x + y) == galois_conj(x) + galois_conj(y)


class TestPadic:
    def test_zero(self):
        assert padic_norm(PScaled(0, 2)) == 0

    def test_three_quarters(self):
        # v_2(3/4) = -2, so the norm is 2^2
        assert padic_norm(PScaled(Fraction(3, 4), 2)) == 4

    def test_eight(self):
        assert padic_norm(PScaled(8, 2)) == Fraction(1, 8)

    def test_valuation(self):
        assert padic_valuation(Fraction(3, 4), 2) == -2
        assert padic_valuation(Fraction(8), 2) == 3
        assert padic_valuation(Fraction(0), 2) is None

    @given(
        st.integers(-500, 500),
        st.integers(0, 6),
        st.integers(-500, 500),
        st.integers(0, 6),
    )
    def test_multiplicative_and_ultrametric(self, a1, k1, a2, k2):
        x = PScaled(Fraction(a1, 2**k1), 2)
        y = PScaled(Fraction(a2, 2**k2), 2)
        assert padic_norm(x * y) == padic_norm(x) * padic_norm(y)
        assert padic_norm(x + y) <= max(padic_norm(x), padic_norm(y))

    def test_rejects_wrong_denominator(self):
        with pytest.raises(ValueError):
            PScaled(Fraction(1, 3), 2)

    def test_rejects_composite_p(self):
        with pytest.raises(ValueError):
            PScaled(1, 4)


class TestPisot:
    def test_phi_is_pisot(self):
        # root of x^2 - x - 1: phi > 1 and |phi*| = 0.618... < 1
        assert is_pisot(PHI)

    def test_sqrt2_is_not(self):
        assert not is_pisot(quad(0, 1, 2))

    def test_one_plus_sqrt2(self):
        assert is_pisot(quad(1, 1, 2))

    def test_rational_not_pisot(self):
        assert not is_pisot(quad(2, 0))  # conjugate is 2 itself

    def test_algebraic_integer_half_case(self):
        assert is_algebraic_integer(PHI)
        assert not is_algebraic_integer(quad(Fraction(1, 2), 0))
        assert not is_algebraic_integer(quad(Fraction(1, 2), Fraction(1, 2), 2))


class TestExactOrder:
    @given(small_rationals, small_rationals)
    def test_sign_matches_float(self, a, b):
        x = quad(a, b)
        f = float(x)
        if abs(f) > 1e-9:
            assert x.sign() == (1 if f > 0 else -1)

    def test_floor(self):
        assert (PHI**3).__floor__() == 4  # phi^3 = 4.236...
        assert (-PHI).__floor__() == -2

    @given(small_rationals, small_rationals, small_rationals, small_rationals)
    def test_addition_exact(self, a1, b1, a2, b2):
        x, y = quad(a1, b1), quad(a2, b2)
        assert (x + y) - y == x


class TestSyntax:
    @given(rationals)
    def test_rational_roundtrip(self, q):
        assert parse_rational(format_rational(q)) == q

    @given(small_rationals, small_rationals)
    def test_quad_roundtrip(self, a, b):
        x = quad(a, b)
        assert parse_quad(format_quad(x)) == x

    @given(st.integers(-10**6, 10**6), st.integers(0, 10))
    def test_pscaled_roundtrip(self, a, k):
        x = PScaled(Fraction(a, 3**k), 3)
        assert parse_pscaled(format_pscaled(x)) == x

    def test_examples(self):
        assert parse_rational("3/4") == Fraction(3, 4)
        assert parse_quad("1/2+1/2*sqrt(5)") == PHI
        assert parse_quad("3-2*sqrt(2)") == quad(3, -2, 2)
        assert parse_pscaled("3/2^2").value == Fraction(3, 4)
        assert format_pscaled(PScaled(8, 2)) == "8/2^0"
