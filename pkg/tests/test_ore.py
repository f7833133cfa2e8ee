import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tmodpure.errors import PrecisionExhausted, ZeroSeries
from tmodpure.fields import PerfElem, field_for_q
from tmodpure.ore import SigmaSeries, TauPoly, embed, sigma_inv, sigma_mul, valuation

from strategies import perf_elems, sigma_series, small_fields, tau_polys

F2 = field_for_q(2)
F3 = field_for_q(3)


def T(F=F2):
    return PerfElem.theta(F)


def one(F=F2):
    return PerfElem.one(F)


def s_mono(c, k, F=F2):
    return SigmaSeries.monomial(F, c, k)


class TestTauPoly:
    def test_commutation(self):
        tau = TauPoly.monomial(F2, one(), 1)
        assert tau * TauPoly.const(F2, T()) == TauPoly.monomial(F2, T() ** 2, 1)

    def test_carlitz_square(self):
        c = TauPoly(F3, [T(F3), one(F3)])
        sq = c * c
        assert sq == TauPoly(F3, [T(F3) ** 2, T(F3) ** 3 + T(F3), one(F3)])

    def test_trailing_zeros_stripped(self):
        z = PerfElem.zero(F2)
        assert TauPoly(F2, [one(), z, z]).degree() == 0
        assert TauPoly(F2, []).is_zero()

    @settings(max_examples=200)
    @given(st.data())
    def test_ring_axioms(self, data):
        F = data.draw(small_fields)
        a, b, c = (data.draw(tau_polys(F, max_deg=2)) for _ in range(3))
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert (a + b) * c == a * c + b * c


class TestSigmaSeries:
    def test_sigma_commutation(self):
        s = s_mono(one(), 1)
        assert s * SigmaSeries.const(F2, T()) == s_mono(T().inverse_frobenius(1), 1)

    def test_mul_example(self):
        # (sigma^-1 + 1) * (theta^-1 sigma^2) = theta^-q sigma + theta^-1 sigma^2
        a = embed(TauPoly(F3, [one(F3), one(F3)]))
        b = s_mono(T(F3).inverse(), 2, F3)
        expect = SigmaSeries.make(F3, 1, [T(F3).inverse() ** 3, T(F3).inverse()])
        assert sigma_mul(a, b) == expect

    def test_embed_carlitz(self):
        e = embed(TauPoly(F2, [T(), one()]))
        assert e.val == -1 and e.coeffs[0].is_one() and e.coeffs[1] == T()

    def test_geometric_inverse(self):
        x = SigmaSeries.make(F2, 0, [one(), one()])
        inv = sigma_inv(x, 4)
        assert inv.prec == 4 and all(c.is_one() for c in inv.coeffs)

    def test_inverse_of_monomial_is_exact(self):
        x = s_mono(T(), -2)
        inv = sigma_inv(x, 5)
        assert inv.exact
        assert (x * inv).is_one() and (inv * x).is_one()

    def test_indeterminate_is_not_zero(self):
        z = SigmaSeries.big_oh(F2, 3)
        assert not z.is_zero() and z.is_indeterminate()
        with pytest.raises(PrecisionExhausted):
            z.valuation()
        with pytest.raises(PrecisionExhausted):
            sigma_inv(z, 4)
        assert z.lower_bound() == 3

    def test_zero_errors(self):
        with pytest.raises(ZeroSeries):
            valuation(SigmaSeries.zero(F2))
        with pytest.raises(ZeroSeries):
            sigma_inv(SigmaSeries.zero(F2), 3)

    def test_precision_of_sum_and_product(self):
        a = SigmaSeries.make(F2, 0, [one()], prec=3)
        b = SigmaSeries.make(F2, -1, [one()], prec=2)
        assert (a + b).prec == 2
        assert (a * b).prec == min(0 + 2, -1 + 3)

    def test_truncation_cancellation_keeps_precision(self):
        a = SigmaSeries.make(F2, 0, [one(), T()], prec=2)
        d = a - a
        assert d.is_indeterminate() and d.prec == 2

    @settings(max_examples=100)
    @given(st.data())
    def test_embed_homomorphism(self, data):
        F = data.draw(small_fields)
        a, b = data.draw(tau_polys(F)), data.draw(tau_polys(F))
        assert embed(a * b) == embed(a) * embed(b)
        assert embed(a + b) == embed(a) + embed(b)

    @settings(max_examples=100)
    @given(st.data())
    def test_inverse_roundtrip(self, data):
        F = data.draw(small_fields)
        a = data.draw(sigma_series(F, nonzero=True, fraction=False))
        n = data.draw(st.integers(1, 5))
        target = -a.valuation() + n
        inv = sigma_inv(a, target)
        for prod in (a * inv, inv * a):
            assert prod.agrees_with(SigmaSeries.one(F))
            assert prod.prec is None or prod.prec >= n

    @settings(max_examples=80)
    @given(st.data())
    def test_series_associative(self, data):
        F = data.draw(small_fields)
        a, b, c = (data.draw(sigma_series(F, fraction=False)) for _ in range(3))
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c

    @settings(max_examples=60)
    @given(st.data())
    def test_valuation_additive(self, data):
        F = data.draw(small_fields)
        a = data.draw(sigma_series(F, nonzero=True))
        b = data.draw(sigma_series(F, nonzero=True))
        assert (a * b).valuation() == a.valuation() + b.valuation()

    def test_scalar_multiplication_sides(self):
        a = s_mono(one(), 1)
        assert a.mul_scalar_left(T()) == s_mono(T(), 1)
        assert a.mul_scalar_right(T()) == s_mono(T().inverse_frobenius(1), 1)
        assert a.shift_left(2) == s_mono(one(), 3)
