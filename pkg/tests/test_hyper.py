"""Tests for coefficient sequences, series assembly and the two Ghat routes."""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from padichg import (
    FrobeniusSpec,
    HGParams,
    SIGMA_HAT,
    b0_constant,
    b_coefficients,
    bhat_coefficients,
    compute_h,
    dwork_truncation_pair,
    embed_rational,
    hat_series,
    hg_coefficients,
    hg_series,
    iwasawa_log,
    log_type_series,
    twist_pair,
)
from padichg.hyper import b_exact, bhat_approx, coeff_exact


def params(a, s=1, p=3):
    return HGParams.create(Fraction(a), s, p)


class TestParams:
    def test_rejects_nonpositive_integer_a(self):
        with pytest.raises(ValueError):
            params(0)
        with pytest.raises(ValueError):
            params(-2)

    def test_rejects_bad_denominator(self):
        with pytest.raises(ValueError):
            HGParams.create(Fraction(1, 3), 1, 3)

    def test_frobenius_direction_validation(self):
        with pytest.raises(ValueError):
            FrobeniusSpec(Fraction(1), "sideways")

    def test_sigma_hat_inverts_c(self):
        frob, frob_hat = twist_pair(4)
        assert frob.c_eff == 4
        assert frob_hat.c_eff == Fraction(1, 4)

    def test_validate_depth_at_two(self):
        with pytest.raises(ValueError):
            FrobeniusSpec(Fraction(3)).validate(2, require_q=True)
        FrobeniusSpec(Fraction(5)).validate(2, require_q=True)


class TestACoefficients:
    def test_a_equal_one_all_ones(self):
        P = params(1, s=3)
        assert all(coeff_exact(P, k) == 1 for k in range(10))

    def test_half_values(self):
        P = params(Fraction(1, 2))
        assert coeff_exact(P, 2) == Fraction(3, 8)
        assert coeff_exact(P, 3) == Fraction(5, 16)

    def test_square_multiplicity(self):
        P = params(Fraction(1, 2), s=2)
        assert coeff_exact(P, 1) == Fraction(1, 4)

    @given(st.integers(0, 25))
    def test_level_one_is_shifted_parameter(self, k):
        P = params(Fraction(1, 2), p=3)
        Q = HGParams.create(P.chain.a_at(1), P.s, P.p)
        assert coeff_exact(P, k, 1) == coeff_exact(Q, k)

    @given(st.integers(1, 30))
    def test_recurrence(self, k):
        P = params(Fraction(2, 3), s=2, p=5)
        step = ((P.a + k - 1) / k) ** P.s
        assert coeff_exact(P, k) == coeff_exact(P, k - 1) * step


class TestTruncationPair:
    def test_p2_a1(self):
        P = HGParams.create(1, 1, 2)
        f, g = dwork_truncation_pair(P, 1, 3)
        assert [c.residue for c in f.coeffs] == [1, 1]
        assert [c.residue for c in g.coeffs] == [1]

    def test_a1_odd_p(self):
        P = params(1, p=5)
        f, g = dwork_truncation_pair(P, 2, 2)
        assert f.order == 25 and g.order == 5
        assert all(c.residue == 1 for c in f.coeffs)

    def test_half_n1(self):
        P = params(Fraction(1, 2))
        f, _ = dwork_truncation_pair(P, 1, 4)
        expect = [Fraction(1), Fraction(1, 2), Fraction(3, 8)]
        assert list(f.coeffs) == [embed_rational(e, 3, 4) for e in expect]


class TestBCoefficients:
    def test_closed_form_a1(self):
        P = params(1)
        frob = FrobeniusSpec(Fraction(1))
        for k in range(1, 12):
            expect = Fraction(0) if k % 3 == 0 else Fraction(1, k)
            assert b_exact(P, frob, k) == expect

    def test_b1_is_a1(self):
        P = params(Fraction(1, 2), s=2, p=5)
        frob = FrobeniusSpec(Fraction(6))
        assert b_exact(P, frob, 1) == coeff_exact(P, 1)

    def test_hand_value_b3(self):
        P = params(Fraction(1, 2))
        frob = FrobeniusSpec(Fraction(1))
        assert b_exact(P, frob, 3) == Fraction(-1, 16)

    def test_table_prepends_constant(self):
        P = params(1)
        tab = b_coefficients(P, FrobeniusSpec(Fraction(1)), 4, 3)
        assert [v.residue for v in tab.values] == [
            0, 1, embed_rational(Fraction(1, 2), 3, 3).residue, 0]


class TestB0:
    def test_a1_zero(self):
        P = params(1)
        assert b0_constant(P, FrobeniusSpec(Fraction(1)), 3).residue == 0

    def test_difference_is_minus_log_over_p(self):
        P = params(Fraction(1, 2))
        d = b0_constant(P, FrobeniusSpec(Fraction(4)), 2) \
            - b0_constant(P, FrobeniusSpec(Fraction(1)), 2)
        log_c = iwasawa_log(embed_rational(4, 3, 3))
        assert d == -log_c.exact_divide(3)

    def test_precision_consistency(self):
        P = params(Fraction(1, 2))
        frob = FrobeniusSpec(Fraction(4))
        assert b0_constant(P, frob, 3).reduce(2) == b0_constant(P, frob, 2)


class TestBhatCoefficients:
    def test_a1_k2(self):
        P = params(1)
        assert bhat_approx(P, FrobeniusSpec(Fraction(1)), 2, 4) == 0

    def test_negative_shift_vanishes(self):
        P = params(Fraction(1, 2))
        assert bhat_approx(P, FrobeniusSpec(Fraction(1)), 0, 4) == 2

    def test_a1_k1(self):
        P = params(1)
        assert bhat_approx(P, FrobeniusSpec(Fraction(1)), 1, 4) == Fraction(1, 2)

    def test_table_matches_pointwise(self):
        P = params(Fraction(1, 2), s=2)
        frob = FrobeniusSpec(Fraction(4), SIGMA_HAT)
        tab = bhat_coefficients(P, frob, 6, 2)
        for k in range(6):
            direct = embed_rational(bhat_approx(P, frob, k, 5), 3, 5)
            assert tab[k].congruent(direct.reduce(2), 2)


class TestSeriesRoutes:
    def test_g_matches_b_table(self):
        P = params(Fraction(1, 2))
        frob = FrobeniusSpec(Fraction(4))
        g, _ = log_type_series(P, frob, 10, 2)
        tab = b_coefficients(P, frob, 10, 2)
        for k in range(10):
            assert g.coeffs[k].congruent(tab[k], 2)

    def test_g_closed_form_a1(self):
        P = params(1)
        g, f = log_type_series(P, FrobeniusSpec(Fraction(1)), 9, 2)
        for k in range(1, 9):
            expect = Fraction(0) if k % 3 == 0 else Fraction(1, k)
            assert g.coeffs[k].congruent(embed_rational(expect, 3, 2), 2)
        assert all(c.residue == 1 for c in f.coeffs)

    def test_ghat_routes_agree(self):
        P = params(Fraction(1, 2))
        for c in (Fraction(1), Fraction(4)):
            frob = FrobeniusSpec(c, SIGMA_HAT)
            ghat, _ = hat_series(P, frob, 10, 2)
            tab = bhat_coefficients(P, frob, 10, 2)
            for k in range(10):
                assert ghat.coeffs[k].congruent(tab[k], 2)

    def test_ghat_constant_term(self):
        P = params(Fraction(1, 2))
        ghat, _ = hat_series(P, FrobeniusSpec(Fraction(1), SIGMA_HAT), 4, 3)
        assert ghat.coeffs[0] == embed_rational(2, 3, 3)

    def test_ghat_a1_k2_zero(self):
        P = params(1)
        ghat, _ = hat_series(P, FrobeniusSpec(Fraction(1), SIGMA_HAT), 4, 3)
        assert ghat.coeffs[2].residue == 0


class TestComputeH:
    def test_a1(self):
        P = params(1)
        h = compute_h(P, 3)
        assert [c.residue for c in h.coeffs] == [1, 1, 1]

    def test_half(self):
        P = params(Fraction(1, 2))
        h = compute_h(P, 4)
        expect = [Fraction(1), Fraction(1, 2), Fraction(3, 8)]
        assert list(h.coeffs) == [embed_rational(e, 3, 4) for e in expect]

    def test_two_thirds_period_two(self):
        P = HGParams.create(Fraction(2, 3), 1, 5)
        h = compute_h(P, 2)
        assert h.order == 9  # degree (p-1)*r with r = 2


class TestCoefficientTables:
    def test_kind_labels(self):
        P = params(Fraction(1, 2))
        assert hg_coefficients(P, 3, 2).kind == "A"
        assert hg_coefficients(P, 3, 2, level=1).kind == "A1"

    def test_json_lines(self):
        P = params(1)
        lines = list(hg_coefficients(P, 2, 2).to_json_lines())
        assert len(lines) == 2 and '"k": 0' in lines[0]

    def test_series_matches_table(self):
        P = params(Fraction(1, 2), s=2)
        f = hg_series(P, 6, 3)
        tab = hg_coefficients(P, 6, 3)
        assert list(f.coeffs) == list(tab.values)
