"""Shared generators for the test suite."""

import random
from fractions import Fraction
from itertools import combinations

from hypothesis import strategies as st

from bhurwitz.partitions import partitions_of
from bhurwitz.ring import ParamScalar, SeriesElem

small_fractions = st.fractions(min_value=-5, max_value=5, max_denominator=7)


@st.composite
def param_scalars(draw, max_degree=3):
    """Random elements of Q(s): ratio of two random polynomials in s."""
    num = draw(st.lists(small_fractions, min_size=1, max_size=max_degree + 1))
    den = draw(st.lists(small_fractions, min_size=1, max_size=max_degree + 1))
    if all(c == 0 for c in den):
        den = [Fraction(1)]
    s = ParamScalar.s()

    def poly(cs):
        out = ParamScalar(0)
        for i, c in enumerate(cs):
            out = out + ParamScalar(c) * s ** i
        return out

    return poly(num) / poly(den)


def random_rational(rng: random.Random, size=5) -> Fraction:
    return Fraction(rng.randint(-size, size), rng.randint(1, size))


def random_p_state(rng: random.Random, degree_max=5, terms=4, domain=None, trunc=None, symbolic_s=True):
    """Random polynomial in p~ of weighted degree <= degree_max."""
    from bhurwitz.ring import NO_TRUNC
    trunc = trunc if trunc is not None else NO_TRUNC
    s = ParamScalar.s()
    out = SeriesElem.zero(domain, trunc)
    for _ in range(rng.randint(1, terms)):
        mu = rng.choice(partitions_of(rng.randint(0, degree_max)))
        c = random_rational(rng)
        if c == 0:
            continue
        if domain is None and symbolic_s:
            coeff = ParamScalar(c) * s ** rng.randint(-2, 2)
        else:
            coeff = out.domain.const(c)
        out = out + SeriesElem.monomial(coeff, h=rng.randint(0, 2), mono=tuple(mu), domain=out.domain,
                                        trunc=trunc)
    return out


def random_x_state(rng: random.Random, r, domain, degree_max=4, terms=4, trunc=None):
    """Random polynomial in x^a_k, a in [1..r], weighted degree <= degree_max."""
    from bhurwitz.ring import NO_TRUNC
    trunc = trunc if trunc is not None else NO_TRUNC
    out = SeriesElem.zero(domain, trunc)
    for _ in range(rng.randint(1, terms)):
        mu = rng.choice(partitions_of(rng.randint(0, degree_max)))
        mono = tuple(sorted(((rng.randint(1, r), k) for k in mu), reverse=True))
        c = random_rational(rng)
        if c == 0:
            continue
        out = out + SeriesElem.monomial(domain.const(c), h=rng.randint(0, 2), lam=rng.randint(-1, 1),
                                        mono=mono, domain=domain, trunc=trunc)
    return out


def second_mode_by_hand(v, k, rep):
    """W^2_k = sum_{a1<a2} :J^{a1} J^{a2}:_k - hbar frakb (k+1) sum_a (a-1) J^a_k, modes cut at the probe degree."""
    r = rep.rank
    b = rep.domain.frakb()
    bound = 3 + abs(k) + 1
    expected = v.like({})
    for a1, a2 in combinations(range(1, r + 1), 2):
        for k1 in range(-bound, bound + 1):
            expected = expected + rep.apply_gen(a1, k1, rep.apply_gen(a2, k - k1, v))
    for a in range(1, r + 1):
        expected = expected - rep.apply_gen(a, k, v).shift(h=1).scale(b * (k + 1) * (a - 1))
    return expected


def third_mode_by_hand(v, k, rep, pair_coeff):
    """W^3_k from triple products, pair terms with hbar frakb * pair_coeff(a1, a2, k1, k2), and single terms."""
    r = rep.rank
    b = rep.domain.frakb()
    g = rep.apply_gen
    bound = 3 + abs(k) + 1
    expected = v.like({})
    for a1, a2, a3 in combinations(range(1, r + 1), 3):
        for k1 in range(-bound, bound + 1):
            for k2 in range(-bound, bound + 1):
                expected = expected + g(a1, k1, g(a2, k2, g(a3, k - k1 - k2, v)))
    for a1, a2 in combinations(range(1, r + 1), 2):
        for k1 in range(-bound, bound + 1):
            k2 = k - k1
            c = pair_coeff(a1, a2, k1, k2)
            if c:
                expected = expected - g(a1, k1, g(a2, k2, v)).shift(h=1).scale(b * c)
    for a in range(1, r + 1):
        c = (k + 2) * (k + 1) * (a - 1) * (a - 2) // 2
        if c:
            expected = expected + g(a, k, v).shift(h=2).scale(b * b * c)
    return expected


def derived_pair_coefficient(a1, a2, k1, k2):
    # (a1 - 1) derivatives hit J^{a1} J^{a2}, (a2 - a1 - 1) hit J^{a2} alone
    return k1 * (a1 - 1) + k2 * (a2 - 2) + a1 + a2 - 3


def displayed_pair_coefficient(a1, a2, k1, k2):
    return k1 * (a1 - 1) + k2 * (2 * a1 - a2) + a1 + a2 - 3
