"""
测试命令行入口
"""

import csv
import io
import json
import logging
import math
import tempfile
import unittest
from pathlib import Path
from typing import Any, Dict, List

from click.testing import CliRunner

from inchyp.cli import _parse_extra_args, cli

TWO_F1_ARGS = ["--variant", "lower", "--a", "1", "--b", "1", "--c", "2", "--y", "0.5"]
RATIO_ARGS = ["--variant", "lower", "--b", "1", "--c", "2", "--n", "2"]


def _json_lines(output: str) -> List[Dict[str, Any]]:
    """取出输出中的 JSON 行（标准错误上的诊断信息可能混在一起）"""
    return [json.loads(line) for line in output.splitlines() if line.startswith("{")]


class CliTestCase(unittest.TestCase):

    def setUp(self):
        self.runner = CliRunner()

    def tearDown(self):
        # setup_logging 把处理器绑定在 CliRunner 的临时流上
        logging.getLogger().handlers.clear()

    def invoke(self, *args: str):
        return self.runner.invoke(cli, list(args))


class TestParseExtraArgs(unittest.TestCase):
    """测试 --name value 参数解析"""

    def test_forms(self):
        """测试空格与等号两种写法，值可以以 '-' 开头"""
        self.assertEqual(_parse_extra_args(["--a", "1", "--x=0.5", "--mu", "-1"]),
                         {"a": "1", "x": "0.5", "mu": "-1"})
        self.assertEqual(_parse_extra_args([]), {})

    def test_errors(self):
        """测试孤立的值、缺失的值与重复的参数"""
        for args in (["1"], ["--a"], ["--a", "1", "--a", "2"], ["--", "1"]):
            with self.assertRaises(ValueError, msg=f"{args}"):
                _parse_extra_args(args)


class TestEval(CliTestCase):
    """测试 eval 子命令"""

    def test_2f1(self):
        """测试 ₂F₁(1,[1,2;0.5];0.5)"""
        result = self.invoke("eval", "2f1", *TWO_F1_ARGS, "--x", "0.5")
        self.assertEqual(result.exit_code, 0, msg=result.output)
        payload = _json_lines(result.output)[0]
        self.assertAlmostEqual(payload["value"], 0.5753641449, places=10)
        self.assertEqual(set(payload), {"value", "abs_err_est", "effort", "converged"})
        self.assertTrue(payload["converged"])

    def test_ratio(self):
        """测试 [1,2;0.5]_2"""
        result = self.invoke("eval", "ratio", *RATIO_ARGS, "--y", "0.5")
        self.assertEqual(result.exit_code, 0, msg=result.output)
        self.assertAlmostEqual(_json_lines(result.output)[0]["value"], 0.0416666667, places=10)

    def test_fracderiv_power(self):
        """测试负数取值 --mu -1"""
        result = self.invoke("eval", "fracderiv-power", "--variant", "lower", "--lambda", "1",
                             "--mu", "-1", "--y", "0.5", "--z", "2")
        self.assertEqual(result.exit_code, 0, msg=result.output)
        self.assertAlmostEqual(_json_lines(result.output)[0]["value"], 0.5, places=12)

    def test_domain_error(self):
        """测试定义域错误退出码为 2"""
        result = self.invoke("eval", "ratio", *RATIO_ARGS, "--y", "1.5")
        self.assertEqual(result.exit_code, 2)
        self.assertIn("错误", result.output)
        self.assertEqual(_json_lines(result.output), [])

    def test_bad_arguments(self):
        """测试未知函数、未知参数与缺失参数"""
        for args in (["eval", "3f2", "--a", "1"],
                     ["eval", "ratio", *RATIO_ARGS, "--y", "0.5", "--q", "1"],
                     ["eval", "ratio", *RATIO_ARGS],
                     ["eval", "ratio", *RATIO_ARGS, "0.5"]):
            self.assertEqual(self.invoke(*args).exit_code, 2, msg=f"{args}")

    def test_not_converged(self):
        """测试项数预算不足时输出结果并以 3 退出"""
        result = self.invoke("--max-terms", "2", "eval", "2f1", *TWO_F1_ARGS, "--x", "0.9", "--method", "series")
        self.assertEqual(result.exit_code, 3, msg=result.output)
        payload = _json_lines(result.output)[0]
        self.assertFalse(payload["converged"])

    def test_overflow(self):
        """测试对数空间前置因子溢出退出码为 2，连乘溢出为 inf 时退出码为 3"""
        overflow = self.invoke("eval", "pochhammer", "--lambda", "1e4", "--n", "100")
        self.assertEqual(overflow.exit_code, 2, msg=overflow.output)
        self.assertIn("错误", overflow.output)
        self.assertEqual(_json_lines(overflow.output), [])

        infinite = self.invoke("eval", "pochhammer", "--lambda", "1e300", "--n", "10")
        self.assertEqual(infinite.exit_code, 3, msg=infinite.output)
        self.assertEqual(_json_lines(infinite.output), [])

    def test_invalid_global_option(self):
        """测试非法的全局选项退出码为 2"""
        self.assertEqual(self.invoke("--tol", "-1", "eval", "ratio", *RATIO_ARGS, "--y", "0.5").exit_code, 2)
        self.assertEqual(self.invoke("--log-level", "LOUD", "list").exit_code, 2)


class TestTable(CliTestCase):
    """测试 table 子命令"""

    def test_ratio_csv(self):
        """测试 y ∈ {0, 0.5} 的两行 CSV"""
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "ratio.csv"
            result = self.invoke("table", "ratio", *RATIO_ARGS, "--sweep", "y:0:0.5:2", "-o", str(path))
            self.assertEqual(result.exit_code, 0, msg=result.output)
            rows = list(csv.reader(io.StringIO(path.read_text(encoding="utf-8"))))
        self.assertEqual(rows[0], ["y", "value", "abs_err_est", "effort", "converged", "error"])
        self.assertEqual(len(rows), 3)
        self.assertEqual((float(rows[1][0]), float(rows[1][1])), (0.0, 0.0))
        self.assertEqual(float(rows[2][0]), 0.5)
        self.assertAlmostEqual(float(rows[2][1]), 0.0416666667, places=10)

    def test_closed_form_json(self):
        """测试 x 扫描与 -ln(1-xy)/x 一致"""
        result = self.invoke("table", "2f1", *TWO_F1_ARGS, "--sweep", "x:0.2:0.8:3", "--format", "json")
        self.assertEqual(result.exit_code, 0, msg=result.output)
        rows = _json_lines(result.output)
        self.assertEqual(len(rows), 3)
        for row, x in zip(rows, (0.2, 0.5, 0.8)):
            self.assertAlmostEqual(row["x"], x, places=14)
        for row in rows:
            expected = -math.log1p(-row["x"] * 0.5) / row["x"]
            self.assertLessEqual(abs(row["value"] / expected - 1.0), 1e-10)

    def test_matches_eval(self):
        """测试网格表与逐点 eval 的值逐位相同"""
        table = _json_lines(self.invoke("table", "2f1", *TWO_F1_ARGS, "--sweep", "x:-0.9:0.9:7",
                                        "--format", "json").output)
        self.assertEqual(len(table), 7)
        for row in table:
            single = _json_lines(self.invoke("eval", "2f1", *TWO_F1_ARGS, "--x", repr(row["x"])).output)[0]
            self.assertEqual(single["value"], row["value"])

    def test_partial_and_total_failure(self):
        """测试部分点失败仍退出 0，全部失败退出 2"""
        partial = self.invoke("table", "ratio", *RATIO_ARGS, "--sweep", "y:0.5:1:2", "--format", "json")
        self.assertEqual(partial.exit_code, 0, msg=partial.output)
        rows = _json_lines(partial.output)
        self.assertEqual(rows[0]["error"], "")
        self.assertNotEqual(rows[1]["error"], "")

        total = self.invoke("table", "ratio", *RATIO_ARGS, "--sweep", "y:1:2:2")
        self.assertEqual(total.exit_code, 2)

    def test_bad_sweep(self):
        """测试扫描轴格式错误与未声明的参数"""
        self.assertEqual(self.invoke("table", "ratio", *RATIO_ARGS, "--sweep", "y:0:1").exit_code, 2)
        self.assertEqual(self.invoke("table", "ratio", *RATIO_ARGS, "--y", "0.5", "--sweep", "q:0:1:2").exit_code, 2)


class TestVerify(CliTestCase):
    """测试 verify 子命令"""

    def test_closed_values(self):
        """测试闭式值套件通过并输出一行报告"""
        result = self.invoke("verify", "closed-values")
        self.assertEqual(result.exit_code, 0, msg=result.output)
        reports = _json_lines(result.output)
        self.assertEqual(len(reports), 1)
        self.assertTrue(reports[0]["passed"])
        self.assertEqual(reports[0]["suite"], "closed-values")
        self.assertNotIn("wall_time", reports[0])

    def test_deterministic(self):
        """测试同一 seed 的输出逐字节相同"""
        first = self.invoke("verify", "closed-values", "--seed", "11")
        second = self.invoke("verify", "closed-values", "--seed", "11")
        self.assertEqual(_json_lines(first.output), _json_lines(second.output))
        self.assertEqual(_json_lines(first.output)[0]["seed"], 11)

    def test_tolerance_override_fails(self):
        """测试极小阈值下套件未通过，退出码为 1"""
        result = self.invoke("verify", "beta-2f1", "--tol", "1e-300")
        report = _json_lines(result.output)[0]
        self.assertEqual(report["tolerance"], 1e-300)
        if report["max_residual"] > 1e-300:
            self.assertEqual(result.exit_code, 1)
            self.assertFalse(report["passed"])

    def test_timing(self):
        """测试 --timing 加入 wall_time"""
        result = self.invoke("verify", "closed-values", "--timing")
        self.assertIn("wall_time", _json_lines(result.output)[0])

    def test_report_only(self):
        """测试只报告的套件不影响退出码"""
        result = self.invoke("verify", "difference-relation")
        self.assertEqual(result.exit_code, 0, msg=result.output)
        report = _json_lines(result.output)[0]
        self.assertTrue(report["report_only"])
        self.assertTrue(math.isfinite(report["max_residual"]))

    def test_unknown_suite(self):
        """测试未知套件退出码为 2"""
        result = self.invoke("verify", "no-such-suite")
        self.assertEqual(result.exit_code, 2)
        self.assertIn("no-such-suite", result.output)


class TestFracderiv(CliTestCase):
    """测试 fracderiv 子命令"""

    def test_power(self):
        """测试 t 的一阶不完全积分为 0.5"""
        result = self.invoke("fracderiv", "--family", "power", "--lambda", "1", "--mu", "-1",
                             "--y", "0.5", "--z", "2")
        self.assertEqual(result.exit_code, 0, msg=result.output)
        self.assertAlmostEqual(_json_lines(result.output)[0]["value"], 0.5, places=12)

    def test_classical(self):
        """测试经典算子作用于 e^{t/2}"""
        result = self.invoke("fracderiv", "--family", "exp", "--alpha", "0.5", "--operator", "classical",
                             "--mu", "-1", "--z", "2")
        self.assertEqual(result.exit_code, 0, msg=result.output)
        self.assertAlmostEqual(_json_lines(result.output)[0]["value"], (math.e - 1.0) / 0.5, places=10)

    def test_domain(self):
        """测试 mu >= 0 与 z <= 0"""
        self.assertEqual(self.invoke("fracderiv", "--mu", "0.5", "--y", "0.5", "--z", "2").exit_code, 2)
        self.assertEqual(self.invoke("fracderiv", "--mu", "-1", "--y", "0.5", "--z", "-2").exit_code, 2)


class TestList(CliTestCase):
    """测试 list 子命令"""

    def test_list(self):
        """测试列出函数与套件"""
        result = self.invoke("list")
        self.assertEqual(result.exit_code, 0, msg=result.output)
        self.assertIn("函数:", result.output)
        self.assertIn("验证套件:", result.output)
        self.assertIn("2f1", result.output)
        self.assertIn("closed-values", result.output)
        self.assertIn("[只报告]", result.output)


if __name__ == '__main__':
    unittest.main()
