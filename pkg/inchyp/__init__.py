"""
inchyp: 不完全 Pochhammer 比值、不完全超几何函数与 Appell 函数、不完全 Riemann-Liouville 算子
"""
from .config import EvalOptions, RuntimeConfig
from .exceptions import ConvergenceError, DomainError
from .kernels import EvalResult

# 数值核心
from .pochhammer import RatioSpec, Variant, pochhammer, ratio, ratio_sequence, ratio_via_2f1
from .hypergeometric import (
    Hyp1F1Params,
    Hyp2F1Params,
    Method,
    evaluate,
    ihyp_1f1,
    ihyp_2f1,
    ihyp_2f1_at_one,
)
from .appell import AppellF1Params, AppellF2Params, appell_f1, appell_f2
from .fracderiv import FracOpSpec, classical_fracderiv, ifrac, ifrac_power

# 注册与验证
from .function_manager import FunctionManager
from .suite_manager import SuiteManager, VerifyReport

__version__ = "0.1.0"

__all__ = [
    "EvalOptions",
    "RuntimeConfig",
    "ConvergenceError",
    "DomainError",
    "EvalResult",
    "RatioSpec",
    "Variant",
    "pochhammer",
    "ratio",
    "ratio_sequence",
    "ratio_via_2f1",
    "Hyp1F1Params",
    "Hyp2F1Params",
    "Method",
    "evaluate",
    "ihyp_1f1",
    "ihyp_2f1",
    "ihyp_2f1_at_one",
    "AppellF1Params",
    "AppellF2Params",
    "appell_f1",
    "appell_f2",
    "FracOpSpec",
    "classical_fracderiv",
    "ifrac",
    "ifrac_power",
    "FunctionManager",
    "SuiteManager",
    "VerifyReport",
]
