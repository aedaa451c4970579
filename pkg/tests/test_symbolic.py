import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from fracalc.errors import DomainError
from fracalc.special_fn import genfactorial
from fracalc.symbolic import (
    GenExpr,
    PowerTerm,
    SignedOrder,
    TrigBase,
    TrigTerm,
    apply_expr,
    apply_power,
    apply_trig,
    check_semigroup,
    expr_deviation,
    frac_coeff,
    in_E,
)
from fracalc.verify import random_E_expr, random_semigroup_cases

SQRT_PI = math.sqrt(math.pi)


def rel(a, b):
    return abs(a - b) / abs(b)


class TestTypes:
    def test_signed_order(self):
        assert SignedOrder.integral(0.5).alpha == -0.5
        assert SignedOrder.derivative(2).alpha == 2.0
        assert SignedOrder(0).is_identity
        assert str(SignedOrder(-1.5)) == "J^1.5"
        assert (SignedOrder(1) + 0.5).alpha == 1.5

    def test_signed_order_finite(self):
        with pytest.raises(DomainError):
            SignedOrder(math.inf)

    @pytest.mark.parametrize("k", [-1.0, -1.5, math.nan])
    def test_power_exponent_floor(self, k):
        with pytest.raises(DomainError):
            PowerTerm(1.0, k)

    def test_power_coeff_finite(self):
        with pytest.raises(DomainError):
            PowerTerm(math.inf, 1.0)

    def test_trig_phase_reduced(self):
        t = TrigTerm(1.0, "sin", -math.pi / 2)
        assert t.base is TrigBase.SIN
        assert t.phase == pytest.approx(3 * math.pi / 2)
        assert TrigTerm(1.0, "cos", 4 * math.pi).phase == 0.0

    def test_canonical_merge(self):
        e = GenExpr.from_terms(
            [PowerTerm(1, 2), PowerTerm(2, 0.5), PowerTerm(3, 2 + 1e-13), PowerTerm(-2, 0.5)]
        )
        assert e.power_terms == (PowerTerm(4.0, 2.0),)

    def test_sorted(self):
        e = GenExpr.from_terms([PowerTerm(1, 3), PowerTerm(1, 0.5), PowerTerm(1, 1)])
        assert [t.exponent for t in e.power_terms] == [0.5, 1.0, 3.0]

    def test_trig_merge(self):
        e = GenExpr.from_terms(
            trig_terms=[TrigTerm(1, "sin"), TrigTerm(2, "sin", 1e-14), TrigTerm(1, "cos")]
        )
        assert e.trig_terms == (TrigTerm(1.0, "cos"), TrigTerm(3.0, "sin"))

    def test_evaluate_scalar_and_array(self):
        e = GenExpr.from_terms([PowerTerm(2, 1.5)], [TrigTerm(3, "cos", 0.25)])
        xs = np.array([0.0, 0.5, 2.0])
        expected = 2 * xs ** 1.5 + 3 * np.cos(xs + 0.25)
        np.testing.assert_allclose(e(xs), expected, rtol=1e-15)
        for x, v in zip(xs, expected):
            assert e(x) == pytest.approx(v, rel=1e-15)

    def test_add_and_scale(self):
        a = GenExpr.power(1, 2) + GenExpr.power(-1, 2)
        assert a.is_zero
        assert GenExpr.power(2, 1).scale(0.5) == GenExpr.power(1, 1)


class TestFracCoeff:
    def test_half_integral_of_sqrt(self):
        assert rel(frac_coeff(0.5, -0.5), SQRT_PI / 2) < 1e-13

    def test_half_derivative_of_x(self):
        assert rel(frac_coeff(1, 0.5), 2 / SQRT_PI) < 1e-13

    def test_pole_gives_zero(self):
        assert frac_coeff(-0.5, 0.5) == 0.0

    def test_identity(self):
        assert frac_coeff(3, 0) == 1.0

    def test_domain(self):
        with pytest.raises(DomainError):
            frac_coeff(-1.0, 0.5)

    def test_large_arguments_use_logs(self):
        # Gamma(201)/Gamma(200.5) ~ sqrt(200) * (1 + O(1/n))
        import mpmath

        ref = float(mpmath.gamma(201) / mpmath.gamma(200.5))
        assert rel(frac_coeff(200, 0.5), ref) < 1e-11

    def test_negative_gamma_argument(self):
        # D^2 x^0.5 puts Gamma(-0.5) < 0 in the denominator
        assert frac_coeff(0.5, 2.0) == pytest.approx(genfactorial(0.5) / math.gamma(-0.5), rel=1e-13)

    def test_ratio_independent_of_x(self):
        ratio = frac_coeff(math.e, -math.pi) / frac_coeff(math.pi, -math.e)
        assert rel(ratio, genfactorial(math.e) / genfactorial(math.pi)) <= 1e-12


class TestApplyPower:
    def test_three_halves_integral_of_square(self):
        out = apply_power(PowerTerm(1, 2), -1.5)
        assert out.exponent == 3.5
        assert rel(out.coeff, 32 / (105 * SQRT_PI)) < 1e-13

    def test_half_integral_of_x(self):
        out = apply_power(PowerTerm(1, 1), SignedOrder.integral(0.5))
        assert out.exponent == 1.5
        assert rel(out.coeff, 4 / (3 * SQRT_PI)) < 1e-13

    def test_transcendental(self):
        out = apply_power(PowerTerm(1, math.e), -math.pi)
        assert out.exponent == math.e + math.pi
        assert rel(out.coeff, genfactorial(math.e) / genfactorial(math.e + math.pi)) < 1e-13

    def test_identity(self):
        t = PowerTerm(2.5, 1.7)
        assert apply_power(t, 0) == t

    def test_exponent_floor_violation(self):
        with pytest.raises(DomainError):
            apply_power(PowerTerm(1, 0.5), 1.7)

    def test_annihilated_by_pole(self):
        assert apply_power(PowerTerm(1, 0), 1) is None
        assert apply_power(PowerTerm(1, -0.5), 0.5) is None


class TestApplyTrig:
    def test_first_derivative(self):
        out = apply_trig(TrigTerm(1, "sin"), 1)
        assert out.base is TrigBase.SIN and out.phase == pytest.approx(math.pi / 2)

    def test_order_pi(self):
        out = apply_trig(TrigTerm(1, "sin"), math.pi)
        assert out.phase == pytest.approx(math.fmod(math.pi ** 2 / 2, 2 * math.pi))

    def test_matches_ordinary_derivative(self):
        # D sin = cos, D cos = -sin, J^1 = inverse phase shift
        xs = np.linspace(0.1, 5, 7)
        d_sin = GenExpr.from_terms(trig_terms=[apply_trig(TrigTerm(1, "sin"), 1)])
        d_cos = GenExpr.from_terms(trig_terms=[apply_trig(TrigTerm(1, "cos"), 1)])
        np.testing.assert_allclose(d_sin(xs), np.cos(xs), atol=1e-15)
        np.testing.assert_allclose(d_cos(xs), -np.sin(xs), atol=1e-15)

    @given(
        st.floats(-5, 5),
        st.floats(0, 2 * math.pi, exclude_max=True),
        st.sampled_from(["sin", "cos"]),
        st.floats(-10, 10),
    )
    def test_round_trip(self, coeff, phase, base, s):
        t = TrigTerm(coeff, base, phase)
        back = apply_trig(apply_trig(t, s), -s)
        assert back.base is t.base and back.coeff == t.coeff
        d = abs(back.phase - t.phase) % (2 * math.pi)
        assert min(d, 2 * math.pi - d) <= 1e-12


class TestApplyExpr:
    def test_half_integrals_compose(self):
        e = GenExpr.power(1, 0.5)
        out = apply_expr(apply_expr(e, -0.5), -0.5)
        (t,) = out.power_terms
        assert t.exponent == pytest.approx(1.5, abs=1e-15)
        assert rel(t.coeff, 2 / 3) < 1e-12

    def test_half_derivatives_compose(self):
        out = apply_expr(apply_expr(GenExpr.power(1, 1), 0.5), 0.5)
        (t,) = out.power_terms
        assert t.exponent == 0.0
        assert rel(t.coeff, 1.0) < 1e-12

    def test_zero_expression(self):
        assert apply_expr(GenExpr(), -2.3).is_zero
        assert apply_expr(GenExpr(), 1.1).is_zero

    def test_error_names_term(self):
        with pytest.raises(DomainError, match=r"x\^0.5"):
            apply_expr(GenExpr.power(1, 0.5) + GenExpr.power(1, 3), 1.7)

    def test_left_inverse_fails_on_constant(self):
        one = GenExpr.constant(1.0)
        out = apply_expr(apply_expr(one, 1), -1)
        assert out.is_zero and out != one

    def test_half_derivative_of_constant(self):
        (t,) = apply_expr(GenExpr.constant(1.0), 0.5).power_terms
        assert t.exponent == -0.5 and rel(t.coeff, 1 / SQRT_PI) < 1e-13

    def test_pole_round_trip_failure(self):
        # D^1/2 D^1/2 x^-1/2 = 0, but D^1 x^-1/2 = -x^-3/2 / 2 is nonzero
        assert frac_coeff(-0.5, 0.5) == 0.0
        assert apply_expr(GenExpr.power(1, -0.5), 0.5).is_zero
        assert frac_coeff(-0.5, 1.0) == pytest.approx(-0.5, rel=1e-13)

    def test_right_inverse_on_E(self):
        rng = np.random.default_rng(11)
        for _ in range(200):
            expr = random_E_expr(rng)
            assert in_E(expr)
            s = float(rng.uniform(0.01, 2.0))
            back = apply_expr(apply_expr(expr, -s), s)
            assert expr_deviation(back, expr) <= 1e-12


class TestInE:
    def test_examples(self):
        assert in_E(GenExpr.power(1, 0.5))
        assert not in_E(GenExpr.constant(1.0))
        assert not in_E(GenExpr.trig("cos"))
        assert in_E(GenExpr.trig("sin"))
        assert in_E(GenExpr.trig("sin", phase=math.pi))
        assert not in_E(GenExpr.power(1, -0.5))
        assert in_E(GenExpr())


class TestSemigroup:
    def test_half_integrals(self):
        assert check_semigroup(GenExpr.power(1, 0.5), -0.5, -0.5).deviation <= 1e-12

    def test_transcendental_orders(self):
        report = check_semigroup(GenExpr.power(1, 2), -math.e, -math.pi)
        assert report.ok
        # both sides against the closed form Gamma(3)/Gamma(3+e+pi)
        (t,) = report.paths["a+b"].power_terms
        assert rel(t.coeff, 2.0 / math.gamma(3 + math.e + math.pi)) < 1e-12

    def test_identity(self):
        e = GenExpr.power(3, 1.2) + GenExpr.trig("cos", 2.0, 0.3)
        assert check_semigroup(e, 0, 0).deviation == 0.0

    def test_reports_failing_composition(self):
        with pytest.raises(DomainError, match="a then b"):
            check_semigroup(GenExpr.power(1, 0.5), 1.7, -1.0)

    def test_pole_crossing_reported(self):
        with pytest.raises(DomainError, match="pole"):
            check_semigroup(GenExpr.constant(1.0), 0.5, 0.5)

    def test_random_cases(self):
        rng = np.random.default_rng(5)
        for expr, a, b in random_semigroup_cases(rng, 500):
            assert check_semigroup(expr, a, b).deviation <= 1e-12
