"""
eval / table 可调用的函数插件

每个插件接受 coerce_params 产出的参数字典与 EvalOptions，返回 EvalResult。
"""

from typing import Any, Dict

from ..config.eval_config import EvalOptions
from .. import kernels
from ..kernels import EvalResult
from ..appell import AppellF1Params, AppellF2Params, appell_f1, appell_f2
from ..fracderiv import FracOpSpec, ifrac_power
from ..hypergeometric import Hyp1F1Params, Hyp2F1Params, ihyp_1f1, ihyp_2f1, ihyp_2f1_at_one
from ..pochhammer import PochhammerArg, RatioSpec, ratio, ratio_via_2f1

Params = Dict[str, Any]


def _exact(value: float) -> EvalResult:
    return EvalResult(value, 16 * kernels.MACHINE_EPS * abs(value), 1, True)


def eval_ratio(params: Params, opts: EvalOptions) -> EvalResult:
    """[b,c;y]_n 或 {b,c;y}_n"""
    spec = RatioSpec(params["b"], params["c"], params["n"], params["y"], params["variant"])
    return ratio(spec, opts)


def eval_ratio_2f1(params: Params, opts: EvalOptions) -> EvalResult:
    spec = RatioSpec(params["b"], params["c"], params["n"], params["y"], params["variant"])
    return ratio_via_2f1(spec, opts)


def eval_2f1(params: Params, opts: EvalOptions) -> EvalResult:
    p = Hyp2F1Params(params["a"], params["b"], params["c"], params["y"], params["x"], params["variant"])
    return ihyp_2f1(p, params["method"], opts)


def eval_1f1(params: Params, opts: EvalOptions) -> EvalResult:
    p = Hyp1F1Params(params["a"], params["b"], params["y"], params["x"], params["variant"])
    return ihyp_1f1(p, params["method"], opts)


def eval_2f1_at_one(params: Params, opts: EvalOptions) -> EvalResult:
    return ihyp_2f1_at_one(params["variant"], params["a"], params["b"], params["c"], params["y"], opts)


def eval_appell_f1(params: Params, opts: EvalOptions) -> EvalResult:
    p = AppellF1Params(params["a"], params["b"], params["c"], params["d"],
                       params["x"], params["z"], params["y"], params["variant"])
    return appell_f1(p, params["method"], opts)


def eval_appell_f2(params: Params, opts: EvalOptions) -> EvalResult:
    p = AppellF2Params(params["a"], params["b"], params["c"], params["d"], params["e"],
                       params["x"], params["z"], params["y"], params["variant"])
    return appell_f2(p, params["method"], opts)


def eval_fracderiv_power(params: Params, opts: EvalOptions) -> EvalResult:
    """幂函数 t^λ 的不完全分数阶导数闭式"""
    spec = FracOpSpec(params["mu"], params["y"], params["z"], params["variant"])
    return ifrac_power(spec.variant, params["lambda"], spec)


def eval_incomplete_beta(params: Params, opts: EvalOptions) -> EvalResult:
    return _exact(kernels.incomplete_beta(params["y"], params["x"], params["z"], opts, params["method"]))


def eval_pochhammer(params: Params, opts: EvalOptions) -> EvalResult:
    return _exact(PochhammerArg(params["lambda"], params["n"]).value())
