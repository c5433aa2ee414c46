import math

import mpmath
import pytest
from hypothesis import given, strategies as st

from conftest import EX1_D, EX1_N1, TABLE_D, bisect
from sincalg.bounds import (
    c_one,
    c_one_forms,
    e_n_asymptotic,
    e_n_classical,
    e_n_log_approx,
    e_n_truncation_form,
    e_n_w_exact,
    predicted_error,
    strip_norm_bound,
    strip_norm_bound_branches,
)
from sincalg.cardinal import DecaySpec, Rule
from sincalg.harness import FULL_LADDER, TABLE_LADDER
from sincalg.specfun import DomainError
from sincalg.stepsize import StepRuleInput, h_log_approx, h_w_exact, h_w_optimized

inp = StepRuleInput.of


def test_classical_values():
    assert e_n_classical(1.0, 1.0 / math.pi, 1) == pytest.approx(math.exp(-1.0), rel=1e-15)
    # pi * d * alpha = pi here, not 1
    assert e_n_classical(math.pi, 1.0 / math.pi, 1) == pytest.approx(math.exp(-math.sqrt(math.pi)), rel=1e-15)
    assert e_n_classical(1.0, 1.0, 4) == pytest.approx(2.0 * math.exp(-2.0 * math.sqrt(math.pi)), rel=1e-14)
    assert e_n_classical(1.0, 1.0, 100) < e_n_classical(1.0, 1.0, 10)
    with pytest.raises(DomainError):
        e_n_classical(1.0, 1.0, 0)


class TestWExactEnvelope:
    def test_table_values(self):
        # reference values carry 7 significant digits
        assert e_n_w_exact(inp(4, TABLE_D, 2)) == pytest.approx(3.641222e-02, abs=5e-9)
        assert e_n_w_exact(inp(4, TABLE_D, 1024)) == pytest.approx(6.528835e-07, abs=5e-14)

    def test_frozen_oracle(self):
        # 40-digit W evaluations
        assert e_n_w_exact(inp(4, TABLE_D, 2)) == pytest.approx(0.0364122187498, rel=1e-11)
        assert e_n_w_exact(inp(4, TABLE_D, 32)) == pytest.approx(0.000916049058775, rel=1e-11)
        assert e_n_w_exact(inp(4, TABLE_D, 1024)) == pytest.approx(6.52883544305e-7, rel=1e-11)

    def test_d_07_does_not_match_table(self):
        # at d = 0.7 the first envelope is far from the reference value
        assert abs(e_n_w_exact(inp(4, 0.7, 2)) - 3.641222e-02) > 1e-3

    @given(st.floats(1.05, 60.0), st.floats(0.01, 10.0), st.integers(0, 10**6))
    def test_identity(self, alpha, d, n):
        i = inp(alpha, d, n)
        assert e_n_truncation_form(h_w_exact(i), i) == pytest.approx(e_n_w_exact(i), rel=1e-12)

    def test_strictly_decreasing(self):
        vals = [e_n_w_exact(inp(4, d, n)) for d in (0.7, TABLE_D) for n in TABLE_LADDER]
        for d_vals in (vals[:10], vals[10:]):
            assert all(a > b for a, b in zip(d_vals, d_vals[1:]))

    def test_large_alpha_log_space(self):
        v = e_n_w_exact(inp(200.0, 0.7, 1000))
        assert math.isfinite(v) and v >= 0


class TestCOne:
    def test_exceeds_one(self):
        for a in (1.01, 1.5, 2.0, 4.0, 10.0, 20.0):
            for d in (0.05, 0.3, 1.0, 5.0):
                assert c_one(a, d) > 1.0

    def test_alpha4(self):
        e, r = c_one_forms(4.0, 0.7)
        assert e == pytest.approx(r, rel=1e-12)
        assert c_one(4.0, 0.7) == pytest.approx(1.0429325778431919849, rel=1e-14)

    def test_oracle_alpha2(self):
        mpmath.mp.dps = 40
        x = mpmath.pi / 2 * (1 / mpmath.pi) ** mpmath.mpf("0.5")
        w = bisect(lambda t: t * mpmath.exp(t) - x, mpmath.mpf(0), mpmath.mpf(5))
        oracle = 1 / (1 - mpmath.exp(-4 * w))
        assert float(oracle) == pytest.approx(1.13985693962352875, rel=1e-15)
        assert c_one(2.0, 1.0) == pytest.approx(float(oracle), rel=1e-13)

    @given(st.floats(1.01, 20.0), st.floats(0.05, 5.0))
    def test_forms_agree(self, alpha, d):
        e, r = c_one_forms(alpha, d)
        assert e == pytest.approx(r, rel=1e-12)

    def test_forms_near_alpha_one(self):
        # the rational form loses digits as alpha -> 1; it still agrees to 1e-10
        e, r = c_one_forms(1.0001, 0.5)
        assert e == pytest.approx(r, rel=1e-10)

    def test_domain(self):
        with pytest.raises(DomainError):
            c_one(1.0, 0.7)
        with pytest.raises(DomainError):
            c_one(2.0, 0.0)


class TestTruncationForm:
    def test_values(self):
        assert e_n_truncation_form(1.0, inp(2, 1.0, 0)) == 1.0
        assert e_n_truncation_form(0.5, inp(4, 1.0, 9)) == pytest.approx(1e-3 / (3 * 0.5 ** 4), rel=1e-15)
        assert e_n_truncation_form(0.5, inp(4, 1.0, 9)) == pytest.approx(5.3333e-03, abs=1e-7)

    def test_rejects_nonpositive_h(self):
        with pytest.raises(DomainError):
            e_n_truncation_form(0.0, inp(2, 1.0, 0))


class TestLogApprox:
    def test_n0(self):
        assert e_n_log_approx(inp(4, 0.7, 0)) == pytest.approx((4 / (0.7 * math.pi)) ** 4 / 3, rel=1e-14)

    @pytest.mark.parametrize("n", FULL_LADDER)
    def test_penalty_over_w_exact(self, n):
        i = inp(4, 0.7, n)
        assert e_n_log_approx(i) >= e_n_w_exact(i)
        assert e_n_log_approx(i) == pytest.approx(e_n_truncation_form(h_log_approx(i), i), rel=1e-12)

    def test_worse_for_large_alpha(self):
        r4 = e_n_log_approx(inp(4, 0.7, 32)) / e_n_w_exact(inp(4, 0.7, 32))
        r10 = e_n_log_approx(inp(10, 0.7, 32)) / e_n_w_exact(inp(10, 0.7, 32))
        assert r4 == pytest.approx(25.02, rel=1e-3)
        assert r10 > 1000 * r4


class TestAsymptotic:
    def test_value(self):
        # frozen 40-digit evaluation of the closed form
        assert e_n_asymptotic(inp(4, 0.7, 1024)) == pytest.approx(3.5704049658590346412e-6, rel=1e-13)

    def test_ratio_bounded(self):
        ratios = [e_n_asymptotic(inp(4, 0.7, n)) / e_n_w_exact(inp(4, 0.7, n))
                  for n in (64, 128, 256, 512, 1024)]
        assert 5.0 < min(ratios) and max(ratios) < 10.0
        assert max(ratios) / min(ratios) < 1.1

    def test_not_applicable(self):
        assert e_n_asymptotic(inp(1.1, 0.01, 0)) is None


class TestStripNormBound:
    def test_ex1_entry(self):
        assert strip_norm_bound(DecaySpec(4.0, 4.0), EX1_D) >= EX1_N1

    def test_vanishes_for_wide_strip(self):
        vals = [strip_norm_bound(DecaySpec(4.0, 1.0), d) for d in (10.0, 100.0, 1000.0)]
        assert vals[0] > vals[1] > vals[2]
        assert vals[2] < 1e-8

    def test_alpha4_branches(self):
        small, large = strip_norm_bound_branches(DecaySpec(4.0, 1.0), 0.7)
        # frozen 40-digit evaluations of both closed forms
        assert small == pytest.approx(2 * 2.2214414690791831235, rel=1e-14)
        assert large == pytest.approx(2 * 4.5795811276819143418, rel=1e-13)
        assert strip_norm_bound(DecaySpec(4.0, 1.0), 0.7) == pytest.approx(4.442882938158366247, rel=1e-14)
        assert strip_norm_bound(DecaySpec(4.0, 1.0), 0.7) == pytest.approx(min(small, large), rel=1e-14)


class TestPredictedError:
    def test_w_exact_table(self):
        p = predicted_error(inp(4, TABLE_D, 2), "w-exact")
        assert p.envelope == pytest.approx(3.641222e-02, abs=5e-9)
        assert p.c_const is None
        p = predicted_error(inp(4, TABLE_D, 2), "w-exact", strip_norm=3.0)
        assert p.c_const == pytest.approx(c_one(4, TABLE_D) * 3.0 + 2.0, rel=1e-15)

    def test_w_optimized_equals_w_exact_at_n1_l(self):
        i = inp(4, 0.7, 32, big_l=1.3)
        assert predicted_error(i, Rule.W_OPTIMIZED, 1.3).h == h_w_exact(i)

    def test_w_optimized_ex1_entry(self):
        p = predicted_error(inp(4, EX1_D, 32, big_l=4.0), "w_optimized", EX1_N1)
        assert p.h == pytest.approx(0.3149022805, abs=1e-9)
        assert p.c_const == pytest.approx((c_one(4, EX1_D) + 2) * 4.0, rel=1e-15)

    def test_w_strip_ex1_entry(self):
        p = predicted_error(inp(4, EX1_D, 32, big_l=4.0), "w-strip")
        assert abs(p.h - 0.3149022805) <= 0.15 * 0.3149022805
        assert p.c_const == pytest.approx(c_one(4, EX1_D) * 4.0, rel=1e-15)

    def test_log_approx_constant(self):
        p = predicted_error(inp(4, 0.7, 8, big_l=2.0), "log-approx", 5.0)
        assert p.c_const == pytest.approx(3 * (math.pi * 0.7 / (4 * math.e)) ** 4 * 5.0 + 4.0, rel=1e-14)

    def test_missing_strip_norm(self):
        with pytest.raises(ValueError, match="N1"):
            predicted_error(inp(4, 0.7, 8), "w-optimized")

    def test_strip_norm_from_input(self):
        i = inp(4, EX1_D, 32, big_l=4.0, strip_norm=EX1_N1)
        assert predicted_error(i, "w-optimized").h == h_w_optimized(i, EX1_N1)

    def test_manual_has_no_envelope(self):
        with pytest.raises(ValueError):
            predicted_error(inp(4, 0.7, 8), "manual")

    @pytest.mark.parametrize("rule", ["w-exact", "w-optimized", "w-strip", "log-approx"])
    @pytest.mark.parametrize("n", FULL_LADDER)
    def test_envelope_identity(self, rule, n):
        i = inp(4, 0.7, n, big_l=1.2)
        p = predicted_error(i, rule, 4.0)
        direct = (n + 1.0) ** -3 / (3.0 * p.h ** 4)
        assert p.envelope == pytest.approx(direct, rel=1e-12)
