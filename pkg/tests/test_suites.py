"""
测试验证套件管理器与套件插件
"""

import math
import tempfile
import unittest
from pathlib import Path

import numpy as np

from inchyp.config.eval_config import EvalOptions
from inchyp.plugins import suites
from inchyp.suite_manager import SuiteCase, SuiteManager, VerifyReport, _run_case

SUITES_DIR = Path(__file__).resolve().parents[1] / "configs" / "suites"


class TestRunCase(unittest.TestCase):
    """测试单个用例的残差处理"""

    def test_residual_is_absolute(self):
        """测试返回残差的绝对值"""
        self.assertEqual(_run_case(SuiteCase("neg", lambda: -2.5e-12)), 2.5e-12)

    def test_failure_is_infinite(self):
        """测试异常与 NaN 都记为无穷大"""
        def boom():
            raise ZeroDivisionError("boom")

        self.assertEqual(_run_case(SuiteCase("boom", boom)), math.inf)
        self.assertEqual(_run_case(SuiteCase("nan", lambda: math.nan)), math.inf)


class TestVerifyReport(unittest.TestCase):
    """测试报告序列化"""

    def test_to_dict(self):
        """测试未计时时不输出 wall_time"""
        report = VerifyReport("closed-values", 20, 1e-14, "x", 1e-10, True)
        data = report.to_dict()
        self.assertNotIn("wall_time", data)
        self.assertEqual(data["suite"], "closed-values")
        self.assertFalse(data["report_only"])

        report.wall_time = 0.25
        self.assertEqual(report.to_dict()["wall_time"], 0.25)


class TestSuiteManager(unittest.TestCase):
    """测试仓库内注册的套件"""

    @classmethod
    def setUpClass(cls):
        cls.manager = SuiteManager(SUITES_DIR, threads=2)

    def test_list_suites(self):
        """测试套件名即配置文件名"""
        names = self.manager.list_suites()
        for name in ("ratio-decomposition", "ratio-paths", "beta-decomposition", "beta-2f1",
                     "decomposition-2f1", "decomposition-1f1", "dual-path", "closed-values",
                     "gauss-value", "transforms", "derivative-ratio", "derivative-shift",
                     "y-moments", "appell", "fracderiv", "closed-forms", "generating",
                     "difference-relation"):
            self.assertIn(name, names)
        self.assertTrue(self.manager.get_suite_config("difference-relation").report_only)
        self.assertFalse(self.manager.get_suite_config("closed-values").report_only)

    def test_unknown_suite(self):
        """测试未知套件"""
        with self.assertRaises(ValueError):
            self.manager.run_suite("no-such-suite")

    def test_closed_values_passes(self):
        """测试闭式值套件通过"""
        report = self.manager.run_suite("closed-values", EvalOptions(), seed=0)
        self.assertTrue(report.passed, msg=f"{report.max_residual} at {report.worst_case}")
        self.assertEqual(report.cases, 20)
        self.assertEqual(report.tolerance, 1e-10)
        self.assertIsNone(report.wall_time)

    def test_beta_2f1_passes(self):
        """测试不完全贝塔的 ₂F₁ 表示套件通过"""
        report = self.manager.run_suite("beta-2f1", timing=True)
        self.assertTrue(report.passed, msg=f"{report.max_residual} at {report.worst_case}")
        self.assertIsNotNone(report.wall_time)

    def test_seed_determinism(self):
        """测试同一 seed 得到同一报告，不同 seed 得到不同网格"""
        first = self.manager.run_suite("closed-values", seed=7)
        second = self.manager.run_suite("closed-values", seed=7)
        other = self.manager.run_suite("closed-values", seed=8)
        self.assertEqual(first.to_dict(), second.to_dict())
        self.assertEqual(first.seed, 7)
        self.assertNotEqual(first.worst_case, other.worst_case)

    def test_integral_path_suites_pass(self):
        """测试走 Gauss-Jacobi 求积的 ₁F₁ 分解与双路径套件在默认阈值下通过"""
        for name in ("decomposition-1f1", "dual-path"):
            report = self.manager.run_suite(name, EvalOptions(), seed=0)
            self.assertTrue(report.passed, msg=f"{name}: {report.max_residual} at {report.worst_case}")

    def test_y_moments_grid(self):
        """测试对 y 积分的套件网格与其它恒等式套件同一量级"""
        self.assertGreaterEqual(self.manager.get_suite_config("y-moments").grid_size, 24)

    def test_tolerance_override(self):
        """测试覆盖通过阈值"""
        report = self.manager.run_suite("closed-values", tolerance=1.0)
        self.assertEqual(report.tolerance, 1.0)
        self.assertTrue(report.passed)


class TestBrokenSuite(unittest.TestCase):
    """测试生成用例时出错的套件"""

    def test_generation_failure_is_reported(self):
        """测试插件生成用例时抛出异常，得到未通过的报告而不是中断"""
        with tempfile.TemporaryDirectory() as tmp:
            root = Path(tmp)
            (root / "broken.yaml").write_text(
                'description: "签名不符的插件"\npy_plugin: "math:sqrt"\ntolerance: 1.0e-8\n', encoding="utf-8")
            (root / "closed-values.yaml").write_text(
                (SUITES_DIR / "closed-values.yaml").read_text(encoding="utf-8"), encoding="utf-8")
            manager = SuiteManager(root, threads=1)

        broken = manager.run_suite("broken")
        self.assertFalse(broken.passed)
        self.assertEqual(broken.cases, 0)
        self.assertEqual(broken.max_residual, math.inf)
        self.assertIn("生成用例失败", broken.worst_case)
        self.assertTrue(manager.run_suite("closed-values").passed)


class TestSuitePlugins(unittest.TestCase):
    """测试套件插件生成的网格"""

    def test_grid_size_respected(self):
        """测试用例数与网格点数对应"""
        cases = suites.closed_values(np.random.default_rng(0), 6, EvalOptions())
        self.assertEqual(len(cases), 6)
        self.assertEqual(sum(label.startswith("2f1") for label in (c.label for c in cases)), 3)

    def test_y_moments_include_analytic_case(self):
        """测试对 y 积分的套件附带解析情形"""
        cases = suites.y_moments(np.random.default_rng(0), 24, EvalOptions())
        self.assertEqual(len(cases), 25)
        self.assertLessEqual(_run_case(cases[-1]), 1e-8)

    def test_difference_relation_is_finite(self):
        """测试只报告的差分关系套件给出有限残差"""
        cases = suites.difference_relation(np.random.default_rng(0), 3, EvalOptions())
        for case in cases:
            self.assertTrue(math.isfinite(_run_case(case)), msg=case.label)


if __name__ == '__main__':
    unittest.main()
