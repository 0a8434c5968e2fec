"""
测试不完全 ₂F₁ 与 ₁F₁
"""

import math
import unittest

from hypothesis import given, settings
from hypothesis import strategies as st

from inchyp import kernels
from inchyp.config.eval_config import EvalOptions
from inchyp.exceptions import DomainError
from inchyp.hypergeometric import (
    FunctionKind,
    Hyp1F1Params,
    Hyp2F1Params,
    Method,
    MomentKind,
    TransformKind,
    derivative_shift,
    difference_relation_residual,
    evaluate,
    ihyp_1f1,
    ihyp_2f1,
    ihyp_2f1_at_one,
    ihyp_2f1_at_one_quadrature,
    transform,
    transform_params,
    transform_round_trip,
    y_moment_residual,
)
from inchyp.pochhammer import Variant


def _log_closed_form(x: float, y: float) -> float:
    """₂F₁(1,[1,2;y];x) = -ln(1-xy)/x"""
    return -math.log1p(-x * y) / x


class TestIncomplete2F1(unittest.TestCase):
    """测试不完全 Gauss 超几何函数"""

    def test_closed_form_both_paths(self):
        """测试闭式值在级数与积分两条路径上都成立"""
        p = Hyp2F1Params(1.0, 1.0, 2.0, 0.5, 0.5)
        expected = _log_closed_form(0.5, 0.5)
        self.assertAlmostEqual(expected, 0.5753641449, places=10)
        for method in (Method.SERIES, Method.INTEGRAL, Method.AUTO):
            self.assertAlmostEqual(ihyp_2f1(p, method).value, expected, places=11, msg=method.value)

    def test_zero_argument(self):
        """测试 x = 0 时只剩 n = 0 项 I_y(b, c-b)"""
        p = Hyp2F1Params(0.7, 1.3, 3.1, 0.4, 0.0)
        self.assertAlmostEqual(ihyp_2f1(p).value, kernels.regularized_incomplete_beta(0.4, 1.3, 1.8), places=14)

    def test_zero_cutoff(self):
        """测试 y = 0 时下变体为 0、上变体为完全函数"""
        self.assertEqual(ihyp_2f1(Hyp2F1Params(0.7, 1.3, 3.1, 0.0, 0.6)).value, 0.0)
        upper = ihyp_2f1(Hyp2F1Params(0.7, 1.3, 3.1, 0.0, 0.6, Variant.UPPER)).value
        self.assertAlmostEqual(upper, kernels.complete_2f1(0.7, 1.3, 3.1, 0.6).value, places=11)

    def test_dual_path(self):
        """测试级数与积分两条路径一致"""
        for variant in Variant:
            p = Hyp2F1Params(0.7, 1.3, 3.1, 0.4, 0.6, variant)
            series = ihyp_2f1(p, Method.SERIES).value
            integral = ihyp_2f1(p, Method.INTEGRAL).value
            self.assertLessEqual(abs(series / integral - 1.0), 1e-9, msg=variant.value)

    def test_auto_switches_to_integral(self):
        """测试超出级数半径余量时 auto 走积分"""
        p = Hyp2F1Params(1.0, 1.0, 2.0, 0.5, 1.95)
        self.assertAlmostEqual(ihyp_2f1(p).value, _log_closed_form(1.95, 0.5), places=10)
        with self.assertRaises(DomainError):
            ihyp_2f1(Hyp2F1Params(1.0, 1.0, 2.0, 0.5, -1.2, Variant.UPPER), Method.SERIES)

    def test_domain(self):
        """测试参数定义域"""
        with self.assertRaises(DomainError):
            Hyp2F1Params(1.0, 1.0, 2.0, 0.5, 2.0)
        with self.assertRaises(DomainError):
            Hyp2F1Params(1.0, 1.0, 2.0, 0.5, 1.0, Variant.UPPER)
        with self.assertRaises(DomainError):
            Hyp2F1Params(1.0, 2.0, 2.0, 0.5, 0.1)
        with self.assertRaises(ValueError):
            ihyp_2f1(Hyp2F1Params(1.0, 1.0, 2.0, 0.5, 0.1), "trapezoid")

    @settings(max_examples=40, deadline=None)
    @given(
        a=st.floats(min_value=-3.0, max_value=3.0),
        b=st.floats(min_value=0.1, max_value=4.0),
        gap=st.floats(min_value=0.1, max_value=4.0),
        y=st.floats(min_value=0.0, max_value=0.95),
        x=st.floats(min_value=-0.9, max_value=0.9),
    )
    def test_decomposition(self, a, b, gap, y, x):
        """测试 下 + 上 = 完全 ₂F₁"""
        c = b + gap
        lower = ihyp_2f1(Hyp2F1Params(a, b, c, y, x, Variant.LOWER)).value
        upper = ihyp_2f1(Hyp2F1Params(a, b, c, y, x, Variant.UPPER)).value
        whole = kernels.complete_2f1(a, b, c, x).value
        self.assertLessEqual(abs(lower + upper - whole), 1e-10 * max(1.0, abs(lower) + abs(upper)))


class TestIncomplete1F1(unittest.TestCase):
    """测试不完全合流超几何函数"""

    def test_closed_forms(self):
        """测试 [1,2;y]_n 的闭式：下变体 (e^{xy}-1)/x，上变体 e^x - e^{xy} 除以 x"""
        lower = ihyp_1f1(Hyp1F1Params(1.0, 2.0, 0.5, 1.0)).value
        upper = ihyp_1f1(Hyp1F1Params(1.0, 2.0, 0.5, 1.0, Variant.UPPER)).value
        self.assertAlmostEqual(lower, math.exp(0.5) - 1.0, places=12)
        self.assertAlmostEqual(upper, math.e - math.exp(0.5), places=12)

    def test_zero_argument(self):
        """测试 x = 0 时为 I_y(a, b-a)"""
        self.assertAlmostEqual(ihyp_1f1(Hyp1F1Params(1.5, 4.0, 0.3, 0.0)).value,
                               kernels.regularized_incomplete_beta(0.3, 1.5, 2.5), places=14)

    def test_negative_argument_paths(self):
        """测试 x < -1 时 auto 走积分且与级数一致"""
        p = Hyp1F1Params(1.0, 2.0, 0.5, -3.0)
        expected = (math.exp(-1.5) - 1.0) / -3.0
        self.assertAlmostEqual(ihyp_1f1(p).value, expected, places=12)
        self.assertAlmostEqual(ihyp_1f1(p, Method.SERIES).value, expected, places=11)

    def test_singular_weight_decomposition(self):
        """测试 a < 1 时积分路径的 下 + 上 = 完全 ₁F₁，与初始节点数无关"""
        a, b, y, x = 0.2963, 3.26, 0.7539, -3.763
        whole = kernels.complete_1f1(a, b, x).value
        for opts in (EvalOptions(), EvalOptions(quad_nodes=2)):
            lower = ihyp_1f1(Hyp1F1Params(a, b, y, x), Method.INTEGRAL, opts)
            upper = ihyp_1f1(Hyp1F1Params(a, b, y, x, Variant.UPPER), Method.INTEGRAL, opts)
            self.assertTrue(lower.converged and upper.converged)
            self.assertLessEqual(abs(lower.value + upper.value - whole), 1e-12 * abs(whole),
                                 msg=f"quad_nodes={opts.quad_nodes}")

    @settings(max_examples=40, deadline=None)
    @given(
        a=st.floats(min_value=0.1, max_value=4.0),
        gap=st.floats(min_value=0.1, max_value=4.0),
        y=st.floats(min_value=0.0, max_value=0.95),
        x=st.floats(min_value=-5.0, max_value=5.0),
    )
    def test_decomposition(self, a, gap, y, x):
        """测试 下 + 上 = 完全 ₁F₁"""
        b = a + gap
        lower = ihyp_1f1(Hyp1F1Params(a, b, y, x, Variant.LOWER)).value
        upper = ihyp_1f1(Hyp1F1Params(a, b, y, x, Variant.UPPER)).value
        whole = kernels.complete_1f1(a, b, x).value
        self.assertLessEqual(abs(lower + upper - whole), 1e-10 * max(1.0, abs(whole)))

    def test_evaluate_dispatch(self):
        """测试 evaluate 按参数类型分派"""
        self.assertEqual(evaluate(Hyp1F1Params(1.0, 2.0, 0.5, 1.0)).value,
                         ihyp_1f1(Hyp1F1Params(1.0, 2.0, 0.5, 1.0)).value)
        self.assertEqual(evaluate(Hyp2F1Params(1.0, 1.0, 2.0, 0.5, 0.5)).value,
                         ihyp_2f1(Hyp2F1Params(1.0, 1.0, 2.0, 0.5, 0.5)).value)


class TestValueAtOne(unittest.TestCase):
    """测试 x = 1 处的闭式值"""

    def test_linear_in_cutoff(self):
        """测试 ₂F₁(1,[1,3;y];1) = 2y 与 ₂F₁(1,{1,3;y};1) = 2 - 2y"""
        self.assertAlmostEqual(ihyp_2f1_at_one("lower", 1.0, 1.0, 3.0, 0.3).value, 0.6, places=12)
        self.assertAlmostEqual(ihyp_2f1_at_one("upper", 1.0, 1.0, 3.0, 0.3).value, 1.4, places=12)

    def test_linear_in_cutoff_above_half(self):
        """测试 y > 1/2 时同样的闭式：2y 与 2 - 2y"""
        self.assertAlmostEqual(ihyp_2f1_at_one("lower", 1.0, 1.0, 3.0, 0.7).value, 1.4, places=12)
        self.assertAlmostEqual(ihyp_2f1_at_one("upper", 1.0, 1.0, 3.0, 0.7).value, 0.6, places=12)
        self.assertAlmostEqual(ihyp_2f1_at_one("lower", 1.0, 1.0, 3.0, 0.5).value, 1.0, places=12)

    def test_variants_sum_to_gauss_value(self):
        """测试两个变体之和为 Gauss 求和值"""
        for y in (0.05, 0.3, 0.5, 0.6, 0.95):
            total = (ihyp_2f1_at_one("lower", 0.4, 1.3, 3.1, y).value
                     + ihyp_2f1_at_one("upper", 0.4, 1.3, 3.1, y).value)
            self.assertAlmostEqual(total, kernels.gauss_summation(0.4, 1.3, 3.1), places=12, msg=f"y={y}")

    def test_matches_quadrature(self):
        """测试闭式与不完全贝塔求积一致"""
        for variant in ("lower", "upper"):
            for a, b, c, y in [(0.5, 1.2, 3.0, 0.4), (-0.7, 0.8, 2.1, 0.75), (1.0, 1.0, 3.0, 0.0)]:
                closed = ihyp_2f1_at_one(variant, a, b, c, y).value
                quadrature = ihyp_2f1_at_one_quadrature(variant, a, b, c, y)
                self.assertAlmostEqual(closed, quadrature, places=9, msg=f"{variant} {(a, b, c, y)}")

    def test_gauss_limit(self):
        """测试 y → 1 时下变体趋于 Gauss 求和值"""
        value = ihyp_2f1_at_one("lower", 0.5, 1.0, 3.0, 1.0 - 1e-8).value
        self.assertAlmostEqual(value, kernels.gauss_summation(0.5, 1.0, 3.0), delta=1e-5)

    def test_requires_convergent_sum(self):
        """测试 c - a - b <= 0 时报错"""
        with self.assertRaises(DomainError):
            ihyp_2f1_at_one("lower", 1.0, 1.0, 2.0, 0.5)


class TestDerivativeShift(unittest.TestCase):
    """测试 x 导数公式"""

    def test_coefficients(self):
        """测试系数与上移后的参数"""
        coefficient, shifted = derivative_shift("2f1", Hyp2F1Params(1.0, 1.0, 2.0, 0.5, 0.2), 1)
        self.assertAlmostEqual(coefficient, 0.5, places=15)
        self.assertEqual((shifted.a, shifted.b, shifted.c, shifted.y), (2.0, 2.0, 3.0, 0.5))

        coefficient, shifted = derivative_shift(FunctionKind.ONE_F1, Hyp1F1Params(1.0, 2.0, 0.5, 0.2), 2)
        self.assertAlmostEqual(coefficient, 1.0 / 3.0, places=15)
        self.assertEqual((shifted.a, shifted.b), (3.0, 4.0))

    def test_against_finite_difference(self):
        """测试与中心差分的一阶导数一致"""
        def closed(x: float) -> float:
            return _log_closed_form(x, 0.5)

        numeric = kernels.richardson_derivative(closed, 0.2, 1, 1e-3)
        coefficient, shifted = derivative_shift("2f1", Hyp2F1Params(1.0, 1.0, 2.0, 0.5, 0.2), 1)
        self.assertLessEqual(abs(coefficient * ihyp_2f1(shifted).value / numeric - 1.0), 1e-6)

    def test_mismatched_kind(self):
        """测试函数族与参数类型不匹配"""
        with self.assertRaises(ValueError):
            derivative_shift("2f1", Hyp1F1Params(1.0, 2.0, 0.5, 0.2), 1)
        with self.assertRaises(DomainError):
            derivative_shift("1f1", Hyp1F1Params(1.0, 2.0, 0.5, 0.2), 0)


class TestTransforms(unittest.TestCase):
    """测试 Pfaff 型与 Kummer 型变换"""

    def test_pfaff_lower(self):
        """测试 pf_lower 两端都等于闭式值"""
        p = Hyp2F1Params(1.0, 1.0, 2.0, 0.5, 0.4)
        expected = _log_closed_form(0.4, 0.5)
        self.assertAlmostEqual(expected, 0.5578588783, places=10)
        self.assertAlmostEqual(transform(TransformKind.PF_LOWER, p).value, expected, places=11)

    def test_kummer_lower(self):
        """测试 kummer_lower 两端都等于 (e^{zy}-1)/z"""
        p = Hyp1F1Params(1.0, 2.0, 0.5, 1.0)
        self.assertAlmostEqual(transform("kummer_lower", p).value, math.exp(0.5) - 1.0, places=11)

    def test_upper_variants(self):
        """测试 pf_upper 与 kummer_upper"""
        p2 = Hyp2F1Params(0.6, 1.4, 2.7, 0.35, -0.5, Variant.UPPER)
        self.assertAlmostEqual(transform("pf_upper", p2).value, ihyp_2f1(p2).value, places=10)
        p1 = Hyp1F1Params(0.9, 2.2, 0.6, 1.7, Variant.UPPER)
        self.assertAlmostEqual(transform("kummer_upper", p1).value, ihyp_1f1(p1).value, places=10)

    def test_zero_argument(self):
        """测试 z = 0 时两端都等于 I_y"""
        p = Hyp2F1Params(1.3, 0.8, 2.0, 0.45, 0.0)
        self.assertAlmostEqual(transform("pf_lower", p).value,
                               kernels.regularized_incomplete_beta(0.45, 0.8, 1.2), places=12)

    def test_round_trip(self):
        """测试一对互逆变换回到原值"""
        for params in [Hyp2F1Params(0.8, 1.1, 2.9, 0.3, 0.45), Hyp1F1Params(1.2, 3.1, 0.7, -0.8, Variant.UPPER)]:
            original, returned = transform_round_trip(params)
            self.assertAlmostEqual(returned / original, 1.0, places=9)

    def test_invalid_combinations(self):
        """测试变换与参数不匹配、y = 0"""
        with self.assertRaises(ValueError):
            transform_params("kummer_lower", Hyp2F1Params(1.0, 1.0, 2.0, 0.5, 0.4))
        with self.assertRaises(ValueError):
            transform_params("pf_upper", Hyp2F1Params(1.0, 1.0, 2.0, 0.5, 0.4))
        with self.assertRaises(DomainError):
            transform_params("pf_lower", Hyp2F1Params(1.0, 1.0, 2.0, 0.0, 0.4))
        with self.assertRaises(ValueError):
            TransformKind.from_string("euler")


class TestDifferenceRelation(unittest.TestCase):
    """测试差分关系残差（只报告）"""

    def test_residual_is_finite(self):
        """测试残差可以计算"""
        for args in [(1.0, 2.0, 2.0, 0.5, 0.3), (0.5, 3.0, 1.5, 0.25, 0.5), (1.0, 2.0, 2.0, 0.5, 0.0)]:
            self.assertTrue(math.isfinite(difference_relation_residual(*args)))

    def test_domain(self):
        """测试 b <= 1 或 h <= 1 时报错"""
        with self.assertRaises(DomainError):
            difference_relation_residual(1.0, 1.0, 2.0, 0.5, 0.3)
        with self.assertRaises(DomainError):
            difference_relation_residual(1.0, 2.0, 2.0, 0.5, 3.0)


class TestYMoments(unittest.TestCase):
    """测试对截断点 y 积分的关系"""

    def test_weighted_moment_analytic(self):
        """测试 complement, k=1 的解析值 0.6137056389"""
        self.assertAlmostEqual(y_moment_residual("complement", 1, 1.0, 1.0, 2.0, 0.5), 0.0, delta=1e-8)

    def test_unit_weight(self):
        """测试 mean"""
        self.assertAlmostEqual(y_moment_residual(MomentKind.MEAN, 1, 1.0, 1.0, 2.0, 0.5), 0.0, delta=1e-8)

    def test_power_weight(self):
        """测试 power 与 power-unit"""
        self.assertAlmostEqual(y_moment_residual("power", 2, 0.6, 1.2, 4.5, 0.4), 0.0, delta=1e-7)
        self.assertAlmostEqual(y_moment_residual("power-unit", 1, 0.6, 1.2, 3.0, -0.4), 0.0, delta=1e-7)
        self.assertAlmostEqual(y_moment_residual("complement", 3, 0.6, 1.2, 3.0, 0.3), 0.0, delta=1e-7)

    def test_zero_argument(self):
        """测试 x = 0 时退化为贝塔矩"""
        self.assertAlmostEqual(y_moment_residual("power", 1, 1.0, 1.5, 4.0, 0.0), 0.0, delta=1e-9)

    def test_domain(self):
        """测试 k、x 与 c-k-b 的限制"""
        with self.assertRaises(DomainError):
            y_moment_residual("complement", 0, 1.0, 1.0, 2.0, 0.5)
        with self.assertRaises(DomainError):
            y_moment_residual("complement", 1, 1.0, 1.0, 2.0, 1.0)
        with self.assertRaises(DomainError):
            y_moment_residual("power", 1, 1.0, 1.0, 2.0, 0.5)


if __name__ == '__main__':
    unittest.main()
