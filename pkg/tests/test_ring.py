from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from bhurwitz.ring import (ConfigurationError, DomainError, NotAFrakbPolynomial, ParamScalar, PolyDomain,
                           SeriesElem, TruncSpec, reexpress_in_frakb, series_exp, series_log, series_mul)

from helpers import param_scalars, small_fractions

s = ParamScalar.s()
b = ParamScalar.frakb()


def p(k, coeff=None, t=0, h=0, trunc=TruncSpec()):
    return SeriesElem.monomial(coeff, t=t, h=h, mono=(k,), trunc=trunc)


class TestParamScalar:
    @given(param_scalars(), param_scalars(), param_scalars())
    def test_ring_axioms(self, x, y, z):
        assert (x + y) + z == x + (y + z)
        assert (x * y) * z == x * (y * z)
        assert x * (y + z) == x * y + x * z
        assert (x + y) - y == x

    @given(param_scalars())
    def test_inverse(self, x):
        if x.is_zero():
            with pytest.raises(ZeroDivisionError):
                x.inverse()
        else:
            assert x * x.inverse() == ParamScalar(1)

    def test_canonical_form(self):
        a = (s ** 2 - 1) / (s - 1)
        assert a == s + 1
        assert a.den == ParamScalar(1).den

    def test_frakb_definition(self):
        assert b == s.inverse() - s
        assert ParamScalar.alpha() == s * s

    def test_evaluate(self):
        assert b.evaluate(2) == Fraction(-3, 2)


class TestReexpress:
    def test_frakb_itself(self):
        assert reexpress_in_frakb(s.inverse() - s) == [0, 1]

    def test_square(self):
        assert reexpress_in_frakb(s ** -2 + s ** 2) == [2, 0, 1]

    def test_rejects_s(self):
        with pytest.raises(NotAFrakbPolynomial):
            reexpress_in_frakb(s)

    def test_rejects_non_laurent(self):
        with pytest.raises(NotAFrakbPolynomial):
            reexpress_in_frakb(ParamScalar(1) / (s + 1))

    @pytest.mark.parametrize("k", range(13))
    def test_powers(self, k):
        assert reexpress_in_frakb(b ** k) == [0] * k + [1]

    @given(st.lists(small_fractions, min_size=1, max_size=6))
    def test_roundtrip_random_polynomial(self, coeffs):
        f = ParamScalar(0)
        for i, c in enumerate(coeffs):
            f = f + ParamScalar(c) * b ** i
        q = reexpress_in_frakb(f)
        while coeffs and coeffs[-1] == 0:
            coeffs = coeffs[:-1]
        assert q == coeffs


class TestSeries:
    def test_product_truncates_t(self):
        tr = TruncSpec(t_max=1)
        one = SeriesElem.one(trunc=tr)
        x = p(1, t=1, trunc=tr)
        assert series_mul(one + x, one - x) == one

    def test_hbar_exponents_add(self):
        a = SeriesElem.monomial(h=-1)
        c = SeriesElem.monomial(h=1)
        assert a * c == SeriesElem.one()

    def test_field_cancellation(self):
        x = p(2, s) * p(2, s.inverse())
        assert x == SeriesElem.monomial(mono=(2, 2))

    def test_incompatible_trunc(self):
        with pytest.raises(ConfigurationError):
            series_mul(SeriesElem.one(trunc=TruncSpec(t_max=1)), SeriesElem.one(trunc=TruncSpec(t_max=2)))

    def test_exp_zero(self):
        tr = TruncSpec(t_max=3)
        assert series_exp(SeriesElem.zero(trunc=tr)) == SeriesElem.one(trunc=tr)

    def test_exp_taylor(self):
        tr = TruncSpec(t_max=2)
        a = p(1, t=1, trunc=tr)
        expected = SeriesElem.one(trunc=tr) + a + (a * a).scale(Fraction(1, 2))
        assert series_exp(a) == expected

    def test_log_exp_roundtrip(self):
        tr = TruncSpec(t_max=4)
        a = p(1, t=1, h=-1, trunc=tr)
        assert series_log(series_exp(a)) == a

    def test_exp_rejects_constant(self):
        tr = TruncSpec(t_max=2)
        with pytest.raises(DomainError):
            series_exp(SeriesElem.one(trunc=tr))

    def test_log_rejects_bad_constant(self):
        tr = TruncSpec(t_max=2)
        with pytest.raises(DomainError):
            series_log(SeriesElem.one(trunc=tr).scale(2))

    @given(st.lists(st.tuples(st.integers(1, 3), st.integers(1, 3), st.integers(-2, 2), small_fractions),
                    min_size=1, max_size=5))
    def test_exp_log_random(self, terms):
        tr = TruncSpec(t_max=3, h_min=-8, h_max=8)
        a = SeriesElem.zero(trunc=tr)
        for t, k, h, c in terms:
            a = a + p(k, ParamScalar(c), t=t, h=h, trunc=tr)
        one = SeriesElem.one(trunc=tr)
        assert series_exp(series_log(one + a)) == one + a

    def test_truncspec_validation(self):
        with pytest.raises(ConfigurationError):
            TruncSpec(h_min=2, h_max=1)
        with pytest.raises(ConfigurationError):
            TruncSpec(t_max=3, degree_max=2)

    def test_grade_cap(self):
        tr = TruncSpec(grade_cap=2)
        assert SeriesElem.monomial(t=1, h=2, trunc=tr).is_zero()
        assert not SeriesElem.monomial(t=1, h=1, trunc=tr).is_zero()

    def test_text_serialization(self):
        x = p(2, s, t=1, h=-1) + SeriesElem.one()
        assert x.to_text() == "1 * 1\ns * t*hbar^-1*p2"


class TestPolyDomain:
    def test_symbols_and_frakb(self):
        d = PolyDomain(("P1",))
        x = d.symbol("P1") * d.frakb() + d.const(2)
        assert d.evaluate(x, {"P1": 3, "b": Fraction(1, 2)}) == Fraction(7, 2)

    def test_unknown_symbol(self):
        with pytest.raises(ConfigurationError):
            PolyDomain(("P1",)).symbol("Q1")
