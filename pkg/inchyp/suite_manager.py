"""
恒等式验证套件的加载与执行
"""
import logging
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Union

import numpy as np

from .config.eval_config import EvalOptions
from .config.loader import config_paths, load_suite_config
from .config.suite_config import SuiteConfig
from .function_manager import dynamic_import

logger = logging.getLogger(__name__)


@dataclass
class SuiteCase:
    """网格上的一个验证点；run 返回非负残差（各套件自行决定相对或绝对）"""
    label: str
    run: Callable[[], float]


# 套件插件: (rng, grid_size, opts) -> 用例列表
SuitePlugin = Callable[[np.random.Generator, int, EvalOptions], List[SuiteCase]]


@dataclass
class VerifyReport:
    """一个套件的验证结果"""
    suite: str
    cases: int
    max_residual: float
    worst_case: str
    tolerance: float
    passed: bool
    report_only: bool = False
    seed: int = 0
    wall_time: Optional[float] = None

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        if self.wall_time is None:
            data.pop("wall_time")
        return data


def _run_case(case: SuiteCase) -> float:
    try:
        residual = abs(float(case.run()))
    except Exception as e:
        logger.error(f"用例 {case.label} 执行失败: {e}", exc_info=True)
        return math.inf
    if math.isnan(residual):
        logger.warning(f"用例 {case.label} 的残差为 NaN")
        return math.inf
    return residual


class SuiteManager:
    """
    负责加载、管理和执行验证套件。套件名是配置文件名（不含扩展名）。
    """

    def __init__(self, config_dir: Union[str, Path], threads: int = 1):
        """
        初始化套件管理器。

        Args:
            config_dir: 存放套件 YAML 配置的目录。
            threads: 并行执行用例的线程数上限。
        """
        self.suites: Dict[str, SuiteConfig] = {}
        self.callables: Dict[str, SuitePlugin] = {}
        self.threads = max(1, threads)
        self._load_suites(Path(config_dir))

    def _load_suites(self, config_dir: Path) -> None:
        paths = config_paths(config_dir)
        logger.info(f"正在从 {config_dir} 加载 {len(paths)} 个验证套件...")
        for name, path in paths.items():
            try:
                config = load_suite_config(path)
                if config.py_plugin:
                    self.suites[name] = config
                    self.callables[name] = dynamic_import(config.py_plugin)
                    logger.info(f"成功加载套件 '{name}' (来自 {config.py_plugin})")
                else:
                    logger.warning(f"套件配置 {path} 中缺少 'py_plugin' 字段，已跳过。")
            except Exception as e:
                logger.error(f"加载套件配置 {path} 失败: {e}", exc_info=True)

    def list_suites(self) -> List[str]:
        """返回所有已加载套件的名称列表。"""
        return list(self.callables.keys())

    def get_suite_config(self, name: str) -> SuiteConfig:
        if name not in self.suites:
            raise ValueError(f"套件 '{name}' 未找到，可用的套件: {self.list_suites()}")
        return self.suites[name]

    def run_suite(self, name: str, opts: Optional[EvalOptions] = None, seed: int = 0,
                  tolerance: Optional[float] = None, timing: bool = False) -> VerifyReport:
        """
        在由 seed 决定的网格上运行一个套件。

        用例可以并发执行，结果按用例顺序汇总，因此同样的 seed 得到同样的报告。

        Args:
            name: 套件名
            opts: 求值选项
            seed: 随机网格种子
            tolerance: 覆盖配置中的通过阈值
            timing: 是否在报告中加入耗时

        Returns:
            VerifyReport
        """
        config = self.get_suite_config(name)
        opts = opts if opts is not None else EvalOptions()
        tol = tolerance if tolerance is not None else config.tolerance
        logger.info(f"运行套件 '{name}'，seed={seed}，网格点数={config.grid_size}，阈值={tol:g}")

        start = time.perf_counter()
        rng = np.random.default_rng(seed)
        try:
            cases = self.callables[name](rng, config.grid_size, opts)
        except Exception as e:
            logger.error(f"套件 '{name}' 生成用例失败: {e}", exc_info=True)
            return VerifyReport(
                suite=name, cases=0, max_residual=math.inf, worst_case=f"生成用例失败: {e}", tolerance=tol,
                passed=False, report_only=config.report_only, seed=seed,
                wall_time=time.perf_counter() - start if timing else None,
            )
        with ThreadPoolExecutor(max_workers=self.threads) as pool:
            residuals = list(pool.map(_run_case, cases))
        elapsed = time.perf_counter() - start

        if residuals:
            worst = int(np.argmax(residuals))
            max_residual, worst_case = residuals[worst], cases[worst].label
        else:
            max_residual, worst_case = 0.0, ""
        passed = max_residual <= tol
        if not passed:
            logger.warning(f"套件 '{name}' 未通过: 最大残差 {max_residual:.3e} > {tol:g}（{worst_case}）")

        return VerifyReport(
            suite=name,
            cases=len(cases),
            max_residual=max_residual,
            worst_case=worst_case,
            tolerance=tol,
            passed=passed,
            report_only=config.report_only,
            seed=seed,
            wall_time=elapsed if timing else None,
        )
