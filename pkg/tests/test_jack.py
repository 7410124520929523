import itertools
import json
import random
from pathlib import Path

import pytest
from hypothesis import given, strategies as st

from bhurwitz.heisenberg import RepOneColor, apply_bridge_sum
from bhurwitz.jack import (SymFunc, adjoint_power_apply, boolean_cumulant, cotransition, hall_pairing, jack,
                           jack_gram_schmidt, jack_state, kerov_mass, laplace_beltrami, laplace_beltrami_rescaled,
                           lb_eigenvalue, monomial_to_power_sum, ns_apply, pieri_pairing, power_sum_to_monomial)
from bhurwitz.partitions import (LEQ, Partition, content_tilde, covers_down, dominance_leq, hook_norm,
                                 partitions_of)
from bhurwitz.ring import DomainError, ParamScalar, SeriesElem, TruncSpec

from helpers import random_p_state

s = ParamScalar.s()
alpha = ParamScalar.alpha()
frakb = ParamScalar.frakb()
GOLDEN = Path(__file__).with_name("golden") / "jack_p_basis.json"

small_partitions = st.integers(1, 5).flatmap(lambda n: st.sampled_from(partitions_of(n)))


def p(*parts, c=1):
    return SymFunc.power_sum(parts, ParamScalar(c))


class TestJack:
    def test_degree_one(self):
        assert jack((1,)) == p(1)

    def test_row(self):
        assert jack((2,)) == p(1, 1) + p(2).scale(alpha)

    def test_column(self):
        assert jack((1, 1)) == p(1, 1) - p(2)

    @pytest.mark.parametrize("n", range(7))
    def test_matches_gram_schmidt(self, n):
        oracle = jack_gram_schmidt(n)
        for lam in partitions_of(n):
            assert jack(lam) == oracle[lam]

    def test_golden_file(self):
        data = json.loads(GOLDEN.read_text())
        assert len(data) == sum(len(partitions_of(n)) for n in range(7))
        for key, coeffs in data.items():
            assert jack(Partition.from_text(key)) == SymFunc.from_alpha_json(coeffs)

    @pytest.mark.parametrize("n", range(1, 7))
    def test_monomial_triangularity(self, n):
        # J_lambda = sum_{mu <= lambda} c_mu m_mu with c_lambda != 0
        parts = partitions_of(n)
        for lam in parts:
            m_coeffs = {}
            for rho, c in jack(lam).coeffs.items():
                for mu, k in power_sum_to_monomial(rho).items():
                    m_coeffs[mu] = m_coeffs.get(mu, ParamScalar(0)) + c * k
            support = {mu for mu, c in m_coeffs.items() if not ParamScalar.coerce(c).is_zero()}
            assert lam in support
            assert all(dominance_leq(mu, lam) == LEQ for mu in support)

    def test_numeric_alpha_specializes(self):
        for lam in partitions_of(4):
            symbolic = jack(lam)
            numeric = jack(lam, alpha=3)
            # coefficients are polynomials in alpha = s^2, so only even powers of s occur
            for mu, c in numeric.coeffs.items():
                poly = symbolic.coeff(mu)
                terms = poly.laurent_terms()
                assert sum(v * 3 ** (e // 2) for e, v in terms.items()) == c

    def test_basis_change_inverse(self):
        for mu in partitions_of(5):
            f = monomial_to_power_sum(mu)
            back = {}
            for rho, c in f.coeffs.items():
                for nu, k in power_sum_to_monomial(rho).items():
                    back[nu] = back.get(nu, 0) + c * k
            assert {nu: c for nu, c in back.items() if c} == {mu: 1}


class TestHallPairing:
    def test_p2_norm(self):
        # <p_mu, p_mu> = alpha^{l(mu)} z_mu; z_(2) = 2
        assert hall_pairing(p(2), p(2)) == 2 * alpha

    def test_orthogonal_monomials(self):
        assert hall_pairing(p(1), p(2)) == 0

    def test_jack_norm(self):
        assert hall_pairing(jack((2,)), jack((2,))) == 2 * alpha ** 2 * (alpha + 1)

    @pytest.mark.parametrize("n", range(6))
    def test_orthogonality(self, n):
        for lam, mu in itertools.product(partitions_of(n), repeat=2):
            v = hall_pairing(jack(lam), jack(mu))
            assert v == (hook_norm(lam) if lam == mu else 0)

    def test_degree_mismatch(self):
        assert hall_pairing(p(1), p(1, 1)) == 0


class TestLaplaceBeltrami:
    def test_degree_one_is_zero(self):
        assert laplace_beltrami(p(1)).coeffs == {}

    def test_row_eigenvalue(self):
        assert laplace_beltrami(jack((2,))) == jack((2,)).scale(alpha)

    @pytest.mark.parametrize("n", range(1, 7))
    def test_eigenvalues(self, n):
        for lam in partitions_of(n):
            assert laplace_beltrami(jack(lam)) == jack(lam).scale(lb_eigenvalue(lam))

    def test_rescaled_column(self):
        state = jack_state((1, 1))
        assert laplace_beltrami_rescaled(state) == state.shift(h=1).scale(-s.inverse())

    @pytest.mark.parametrize("lam", [(2,), (2, 1), (3, 1), (2, 2, 1)])
    def test_rescaled_eigenvalue(self, lam):
        lam = Partition(lam)
        total = ParamScalar(0)
        for box in lam.boxes():
            total = total + content_tilde(lam, box)
        state = jack_state(lam)
        assert laplace_beltrami_rescaled(state) == state.shift(h=1).scale(total)


class TestPieriAndKerov:
    def test_empty_to_box(self):
        assert pieri_pairing((), (1,)) == s

    def test_non_cover(self):
        assert pieri_pairing((2,), (1, 1, 1)) == 0

    def test_size_mismatch(self):
        # (1) -> (3) skips a degree; rejected rather than returning 0
        with pytest.raises(ValueError):
            pieri_pairing((1,), (3,))
        with pytest.raises(ValueError):
            pieri_pairing((1,), (1,))

    def test_row_cross_check(self):
        f = kerov_mass((1,), (2,))
        assert pieri_pairing((1,), (2,)) == f * s * 2 * hook_norm((1,))

    @pytest.mark.parametrize("n", range(1, 6))
    def test_nonzero_only_on_covers(self, n):
        for lam in partitions_of(n):
            covers = {mu for mu, _ in covers_down(lam)}
            for mu in partitions_of(n - 1):
                assert (pieri_pairing(mu, lam) != 0) == (mu in covers)

    def test_single_box_cotransition(self):
        ct = cotransition((1,))
        assert ct.pairs() == [(-frakb, ParamScalar(1))]

    def test_staircase_cotransition(self):
        ct = cotransition((2, 1))
        assert len(ct.atoms) == 2
        assert ct.masses[0] + ct.masses[1] == ParamScalar(1)

    def test_rectangle_cotransition(self):
        ct = cotransition((3, 3))
        assert ct.masses == (ParamScalar(1),)

    def test_empty_cotransition(self):
        with pytest.raises(ValueError):
            cotransition(())

    @given(small_partitions)
    def test_masses_sum_to_one_and_atoms_distinct(self, lam):
        ct = cotransition(lam)
        total = ParamScalar(0)
        for m in ct.masses:
            total = total + m
        assert total == ParamScalar(1)
        assert len(set(ct.atoms)) == len(ct.atoms)
        for atom, mu in zip(ct.atoms, ct.removed):
            box = [b for b in lam.boxes() if b not in mu.boxes()][0]
            assert atom == content_tilde(lam, box) - frakb


class TestBoolean:
    def test_single_box(self):
        assert boolean_cumulant((1,), 0) == ParamScalar(1)
        assert boolean_cumulant((1,), 1) == -frakb
        assert boolean_cumulant((1,), 1) == s - s.inverse()

    @given(small_partitions)
    def test_energy(self, lam):
        assert boolean_cumulant(lam, 0) == ParamScalar(lam.size)

    @pytest.mark.parametrize("n", range(1, 6))
    def test_moment_chain(self, n):
        for lam in partitions_of(n):
            ct = cotransition(lam)
            for ell in range(5):
                assert boolean_cumulant(lam, ell) == ct.moment(ell) * n

    def test_negative_order(self):
        with pytest.raises(ValueError):
            boolean_cumulant((1,), -1)


class TestNazarovSklyanin:
    def test_energy_operator(self):
        state = SeriesElem.monomial(mono=(3, 1, 1))
        assert ns_apply(0, state) == state.shift(h=2).scale(5)

    @pytest.mark.parametrize("lam,ell", [((2,), 1), ((1, 1), 2)])
    def test_examples(self, lam, ell):
        state = jack_state(lam)
        assert ns_apply(ell, state) == state.shift(h=ell + 2).scale(boolean_cumulant(lam, ell))

    @pytest.mark.parametrize("n", range(1, 6))
    def test_eigen_identity(self, n):
        for lam in partitions_of(n):
            state = jack_state(lam)
            for ell in range(5):
                assert ns_apply(ell, state) == state.shift(h=ell + 2).scale(boolean_cumulant(lam, ell))

    @pytest.mark.parametrize("n", range(1, 6))
    def test_shifted_form_via_pieri(self, n):
        for lam in partitions_of(n):
            state = jack_state(lam)
            for ell in range(4):
                total = ParamScalar(0)
                for mu, box in covers_down(lam):
                    total = total + pieri_pairing(mu, lam) / hook_norm(mu) * content_tilde(lam, box) ** ell
                expected = state.shift(h=ell + 2).scale(total / s)
                assert ns_apply(ell, state, shifted=True) == expected

    def test_shift_irrelevant_at_order_zero(self):
        state = jack_state((3, 1))
        assert ns_apply(0, state, shifted=True) == ns_apply(0, state)

    def test_bound_too_small(self):
        with pytest.raises(DomainError):
            ns_apply(1, jack_state((2, 1)), bound=2)


class TestAdjointPaths:
    @pytest.mark.parametrize("i", range(4))
    def test_literal_and_binomial_agree(self, i, rng):
        v = random_p_state(rng, degree_max=4)
        assert adjoint_power_apply(i, v) == adjoint_power_apply(i, v, "binomial")

    @pytest.mark.parametrize("i", range(5))
    def test_matches_bridge_sum(self, i, rng):
        rep = RepOneColor()
        for _ in range(3):
            v = random_p_state(rng, degree_max=5)
            assert adjoint_power_apply(i, v) == apply_bridge_sum(v, rep, (0, -1), (i + 1, 0), [0] * (i + 1))
