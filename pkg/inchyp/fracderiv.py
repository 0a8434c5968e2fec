"""
不完全 Riemann-Liouville 分数阶导数算子

    下算子:  D_z^μ[f; y] = z^{-μ}/Γ(-μ) ∫_0^y f(uz)(1-u)^{-μ-1} du
    上算子:  D_z^μ{f; y} = z^{-μ}/Γ(-μ) ∫_y^1 f(uz)(1-u)^{-μ-1} du

两者之和是经典算子 1/Γ(-μ) ∫_0^z f(t)(z-t)^{-μ-1} dt。只处理 μ < 0。
"""

import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Optional, Tuple, Union

from scipy import special

from .config.eval_config import EvalOptions
from . import kernels
from .kernels import EvalResult
from .exceptions import DomainError
from .appell import AppellF1Params, AppellF2Params, appell_f1, appell_f2
from .hypergeometric import Hyp2F1Params, Method, ihyp_2f1
from .pochhammer import Variant

logger = logging.getLogger(__name__)

FunctionHandle = Callable[[float], float]

# 下算子 y 超过此值时改用 经典 - 上算子
_COMPLEMENT_SWITCH = 0.9
# 代数权求积只用在 [_WEIGHT_SPLIT, 1] 上
_WEIGHT_SPLIT = 0.5


@dataclass(frozen=True)
class FracOpSpec:
    """分数阶算子的阶数 mu、截断点 y、求值点 z 与变体"""
    mu: float
    y: float
    z: float
    variant: Variant = Variant.LOWER

    def __post_init__(self):
        object.__setattr__(self, "variant", Variant.from_string(self.variant))
        if not self.mu < 0:
            raise DomainError(f"分数阶算子只定义在 mu < 0，实际为 {self.mu}")
        if not 0 <= self.y < 1:
            raise DomainError(f"截断点 y 必须位于 [0, 1)，实际为 {self.y}")
        if not self.z > 0:
            raise DomainError(f"求值点 z 必须 > 0，实际为 {self.z}")


def _operator_scale(mu: float, z: float) -> float:
    # z^{-μ}/Γ(-μ)，-μ > 0 故 Γ(-μ) > 0
    return math.exp(-mu * math.log(z) - special.gammaln(-mu))


def _merge(first: EvalResult, second: EvalResult, sign: float = 1.0) -> EvalResult:
    return EvalResult(
        first.value + sign * second.value,
        first.abs_err_est + second.abs_err_est,
        first.effort + second.effort,
        first.converged and second.converged,
    )


def _integrate_to_one(smooth: FunctionHandle, lo: float, mu: float, opts: Optional[EvalOptions]) -> EvalResult:
    """∫_lo^1 smooth(u)(1-u)^{-μ-1} du；代数权只用在 [0.5, 1] 上，smooth 不会在 u = 0 处求值。"""
    if lo >= _WEIGHT_SPLIT:
        return kernels.adaptive_integrate(smooth, lo, 1.0, opts, exponent_at_hi=-mu - 1.0)
    head = kernels.adaptive_integrate(lambda u: smooth(u) * (1.0 - u) ** (-mu - 1.0), lo, _WEIGHT_SPLIT, opts)
    tail = kernels.adaptive_integrate(smooth, _WEIGHT_SPLIT, 1.0, opts, exponent_at_hi=-mu - 1.0)
    return _merge(head, tail)


def ifrac(f: FunctionHandle, spec: FracOpSpec, opts: Optional[EvalOptions] = None) -> EvalResult:
    """
    对任意可调用对象应用不完全分数阶算子

    下算子在 [0,y] 上积分，(1-u)^{-μ-1} 有界，直接自适应求积；y > 0.9 时改算
    经典算子减上算子。上算子在 [y,1] 上积分，u = 1 端的 (1-u)^{-μ-1}
    作为代数权交给求积。

    Args:
        f: 在 (0, z] 上有限的实函数
        spec: 算子参数
        opts: 求值选项

    Returns:
        EvalResult
    """
    mu, y, z = spec.mu, spec.y, spec.z
    scale = _operator_scale(mu, z)

    def smooth(u: float) -> float:
        return f(u * z)

    if spec.variant is Variant.LOWER:
        if y == 0:
            return EvalResult(0.0, 0.0, 0, True)
        if y > _COMPLEMENT_SWITCH:
            inner = _merge(_integrate_to_one(smooth, 0.0, mu, opts), _integrate_to_one(smooth, y, mu, opts), -1.0)
        else:
            inner = kernels.adaptive_integrate(lambda u: f(u * z) * (1.0 - u) ** (-mu - 1.0), 0.0, y, opts)
    else:
        inner = _integrate_to_one(smooth, y, mu, opts)

    if not inner.converged:
        logger.warning(f"分数阶算子 ({spec.variant.value}, mu={mu}, y={y}, z={z}) 的求积未收敛")
    return EvalResult(scale * inner.value, scale * inner.abs_err_est, inner.effort, inner.converged)


def classical_fracderiv(f: FunctionHandle, mu: float, z: float,
                        opts: Optional[EvalOptions] = None) -> EvalResult:
    """经典 Riemann-Liouville 算子 1/Γ(-μ) ∫_0^z f(t)(z-t)^{-μ-1} dt，μ < 0。"""
    if not mu < 0:
        raise DomainError(f"分数阶算子只定义在 mu < 0，实际为 {mu}")
    if not z > 0:
        raise DomainError(f"求值点 z 必须 > 0，实际为 {z}")
    # t = uz
    inner = _integrate_to_one(lambda u: f(u * z), 0.0, mu, opts)
    scale = _operator_scale(mu, z)
    return EvalResult(scale * inner.value, scale * inner.abs_err_est, inner.effort, inner.converged)


def ifrac_power(variant: Union[str, Variant], lam: float, spec: FracOpSpec) -> EvalResult:
    """
    幂函数 t^λ 的闭式

        下: B_y(λ+1, -μ)/Γ(-μ) · z^{λ-μ}
        上: B_{1-y}(-μ, λ+1)/Γ(-μ) · z^{λ-μ}

    参数 variant 优先于 spec.variant。
    """
    variant = Variant.from_string(variant)
    if not lam > -1:
        raise DomainError(f"幂函数闭式要求 lambda > -1，实际为 {lam}")
    mu, y, z = spec.mu, spec.y, spec.z
    log_scale = (lam - mu) * math.log(z) - special.gammaln(-mu)
    if variant is Variant.LOWER:
        beta_part = kernels.incomplete_beta(y, lam + 1.0, -mu)
    else:
        beta_part = kernels.complementary_regularized_beta(y, lam + 1.0, -mu) * math.exp(kernels.log_beta(lam + 1.0, -mu))
    value = beta_part * math.exp(log_scale)
    return EvalResult(value, 16 * kernels.MACHINE_EPS * abs(value), 1, True)


class ClosedFormKind(Enum):
    """算子作用后得到不完全函数的三类闭式"""
    TWO_F1 = "two_f1"
    APPELL_F1 = "appell_f1"
    APPELL_F2 = "appell_f2"

    @classmethod
    def from_string(cls, value: Union[str, "ClosedFormKind"]) -> "ClosedFormKind":
        if isinstance(value, cls):
            return value
        try:
            return cls(value.lower())
        except ValueError:
            raise ValueError(f"不支持的闭式类型: {value}，支持的类型: {[k.value for k in cls]}")


@dataclass(frozen=True)
class ClosedFormSpec:
    """
    闭式公式的参数，算子阶数为 lam - mu（要求 mu > lam > 0）

    two_f1 用 alpha；appell_f1 另用 beta 与系数 a, b；appell_f2 另用 beta, gamma 与 t。
    """
    lam: float
    mu: float
    alpha: float
    y: float
    z: float
    beta: float = 0.0
    gamma: float = 0.0
    a: float = 0.0
    b: float = 0.0
    t: float = 0.0

    def __post_init__(self):
        if not self.lam > 0:
            raise DomainError(f"闭式公式要求 lambda > 0，实际为 {self.lam}")
        if not self.mu > self.lam:
            raise DomainError(f"算子阶数 lambda - mu 必须 < 0，实际为 lambda={self.lam}, mu={self.mu}")
        if not self.z > 0:
            raise DomainError(f"求值点 z 必须 > 0，实际为 {self.z}")

    @property
    def order(self) -> float:
        return self.lam - self.mu


def closed_form_sides(kind: Union[str, ClosedFormKind], variant: Union[str, Variant], params: ClosedFormSpec,
                      opts: Optional[EvalOptions] = None) -> Tuple[float, float]:
    """
    闭式公式两端，算子阶数 λ-μ：

        two_f1:    D[t^{λ-1}(1-t)^{-α}]                       = Γ(λ)/Γ(μ) z^{μ-1} ₂F₁(α,[λ,μ;y];z)
        appell_f1: D[t^{λ-1}(1-at)^{-α}(1-bt)^{-β}]            = Γ(λ)/Γ(μ) z^{μ-1} F1[λ,α,β;μ;az,bz;y]
        appell_f2: D[s^{λ-1}(1-s)^{-α} ₂F₁(α,[β,γ;y];t/(1-s))] = Γ(λ)/Γ(μ) z^{μ-1} F2[α,β,λ;γ,μ;t,z;y]

    上算子对应右端的上变体；appell_f2 的内层 ₂F₁ 与算子取同一变体。

    Returns:
        (算子一侧, 闭式一侧)
    """
    kind = ClosedFormKind.from_string(kind)
    variant = Variant.from_string(variant)
    p = params
    spec = FracOpSpec(p.order, p.y, p.z, variant)
    lam, alpha = p.lam, p.alpha

    if kind is ClosedFormKind.TWO_F1:
        def f(t):
            return t ** (lam - 1.0) * (1.0 - t) ** (-alpha)

        target = ihyp_2f1(Hyp2F1Params(alpha, lam, p.mu, p.y, p.z, variant), Method.AUTO, opts).value
    elif kind is ClosedFormKind.APPELL_F1:
        a, b, beta = p.a, p.b, p.beta

        def f(t):
            return t ** (lam - 1.0) * (1.0 - a * t) ** (-alpha) * (1.0 - b * t) ** (-beta)

        target = appell_f1(AppellF1Params(lam, alpha, beta, p.mu, a * p.z, b * p.z, p.y, variant),
                           Method.SERIES, opts).value
    else:
        beta, gamma, t_arg, y = p.beta, p.gamma, p.t, p.y

        def f(s):
            inner = Hyp2F1Params(alpha, beta, gamma, y, t_arg / (1.0 - s), variant)
            return s ** (lam - 1.0) * (1.0 - s) ** (-alpha) * ihyp_2f1(inner, Method.AUTO, opts).value

        target = appell_f2(AppellF2Params(alpha, beta, lam, gamma, p.mu, t_arg, p.z, p.y, variant),
                           Method.SERIES, opts).value

    lhs = ifrac(f, spec, opts).value
    log_prefactor = special.gammaln(lam) - special.gammaln(p.mu) + (p.mu - 1.0) * math.log(p.z)
    rhs = math.exp(log_prefactor) * target
    logger.debug(f"闭式 {kind.value} ({variant.value}): 算子 {lhs:.12g}, 闭式 {rhs:.12g}")
    return lhs, rhs


def closed_form_residual(kind: Union[str, ClosedFormKind], variant: Union[str, Variant], params: ClosedFormSpec,
                         opts: Optional[EvalOptions] = None) -> float:
    """算子一侧 - 闭式一侧"""
    lhs, rhs = closed_form_sides(kind, variant, params, opts)
    return lhs - rhs


class FunctionFamily(Enum):
    """命令行 fracderiv 可用的内置函数族"""
    POWER = "power"
    BINOMIAL = "binomial"
    EXP = "exp"

    @classmethod
    def from_string(cls, value: Union[str, "FunctionFamily"]) -> "FunctionFamily":
        if isinstance(value, cls):
            return value
        try:
            return cls(value.lower())
        except ValueError:
            raise ValueError(f"不支持的函数族: {value}，支持的函数族: {[k.value for k in cls]}")

    def build(self, lam: float = 0.0, alpha: float = 0.0) -> FunctionHandle:
        """power: t^λ；binomial: t^{λ-1}(1-t)^{-α}；exp: e^{αt}"""
        if self is FunctionFamily.POWER:
            return lambda t: t ** lam
        if self is FunctionFamily.BINOMIAL:
            return lambda t: t ** (lam - 1.0) * (1.0 - t) ** (-alpha)
        return lambda t: math.exp(alpha * t)
