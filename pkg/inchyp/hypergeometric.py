"""
不完全 Gauss 超几何函数 ₂F₁(a,[b,c;y];x)、₂F₁(a,{b,c;y};x)
与不完全合流超几何函数 ₁F₁([a,b;y];x)、₁F₁({a,b;y};x)

每个函数都有级数与 Euler 积分两条求值路径，另外提供 x = 1 的闭式值、
x 导数公式、Pfaff/Kummer 型变换、差分关系与 y 矩积分关系的残差检验。
"""

import logging
import math
from dataclasses import dataclass, replace
from enum import Enum
from typing import Callable, Iterator, Optional, Tuple, Union

import numpy as np
from scipy import special

from .config.eval_config import EvalOptions
from . import kernels
from .kernels import EvalResult
from .exceptions import DomainError
from .pochhammer import Variant, check_ratio_params, pochhammer, ratio_sequence

logger = logging.getLogger(__name__)

# 每次向比值序列请求的长度
_RATIO_CHUNK = 64
# auto 选择级数的半径余量
_SERIES_MARGIN = 0.95
# 补集路径的切换点：下变体 y 大于此值、上变体 y 小于 1 减此值时改用 完全 - 另一变体
_COMPLEMENT_SWITCH = 0.9
# ₁F₁ 在 x 低于此值时 auto 走积分，避免交错级数相消
_CONFLUENT_SERIES_FLOOR = -1.0
# y 矩积分在 1 - 此值处分段
_MOMENT_SPLIT = 1e-4


class Method(Enum):
    """求值路径"""
    SERIES = "series"
    INTEGRAL = "integral"
    AUTO = "auto"

    @classmethod
    def from_string(cls, value: Union[str, "Method"]) -> "Method":
        if isinstance(value, cls):
            return value
        try:
            return cls(value.lower())
        except ValueError:
            raise ValueError(f"不支持的求值方法: {value}，支持的方法: {[m.value for m in cls]}")


@dataclass(frozen=True)
class Hyp2F1Params:
    """₂F₁(a,[b,c;y];x) / ₂F₁(a,{b,c;y};x) 的参数"""
    a: float
    b: float
    c: float
    y: float
    x: float
    variant: Variant = Variant.LOWER

    def __post_init__(self):
        object.__setattr__(self, "variant", Variant.from_string(self.variant))
        check_ratio_params(self.b, self.c, self.y)
        if self.variant is Variant.LOWER and not self.x * self.y < 1:
            raise DomainError(f"下变体要求 x*y < 1，实际为 x={self.x}, y={self.y}")
        if self.variant is Variant.UPPER and not self.x < 1:
            raise DomainError(f"上变体要求 x < 1，实际为 x={self.x}")


@dataclass(frozen=True)
class Hyp1F1Params:
    """₁F₁([a,b;y];x) / ₁F₁({a,b;y};x) 的参数"""
    a: float
    b: float
    y: float
    x: float
    variant: Variant = Variant.LOWER

    def __post_init__(self):
        object.__setattr__(self, "variant", Variant.from_string(self.variant))
        check_ratio_params(self.a, self.b, self.y)


def incomplete_euler_integral(b: float, c: float, g: Callable[[np.ndarray], np.ndarray], y: float,
                              variant: Union[str, Variant], opts: Optional[EvalOptions] = None,
                              complete_ok: bool = False) -> EvalResult:
    """
    计算 (1/B(b,c-b)) ∫ t^{b-1}(1-t)^{c-b-1} g(t) dt，积分区间为 [0,y]（下）或 [y,1]（上）

    下变体用 t = y*u，上变体用 t = 1 - u(1-y) 映射到 [0,1]，端点奇性交给 Gauss-Jacobi 权。
    complete_ok 表示 g 在整个 [0,1] 上光滑，此时靠近 1 的下变体与靠近 0 的
    上变体改用 完全积分 - 另一变体。

    Args:
        b, c: Euler 参数，c > b > 0
        g: 光滑因子，接受 numpy 数组
        y: 截断点
        variant: 变体
        opts: 求值选项
        complete_ok: 完全积分 ∫_0^1 是否可用

    Returns:
        EvalResult
    """
    variant = Variant.from_string(variant)
    check_ratio_params(b, c, y)

    if complete_ok and variant is Variant.LOWER and y > _COMPLEMENT_SWITCH:
        return _combine(_complete_euler(b, c, g, opts), _direct_upper(b, c, g, y, opts))
    if complete_ok and variant is Variant.UPPER and y < 1.0 - _COMPLEMENT_SWITCH:
        return _combine(_complete_euler(b, c, g, opts), _direct_lower(b, c, g, y, opts))
    if variant is Variant.LOWER:
        return _direct_lower(b, c, g, y, opts)
    return _direct_upper(b, c, g, y, opts)


def _direct_lower(b, c, g, y, opts) -> EvalResult:
    if y == 0:
        return EvalResult(0.0, 0.0, 0, True)
    inner = kernels.jacobi_integrate(lambda u: (1.0 - u * y) ** (c - b - 1.0) * g(u * y), b - 1.0, 0.0, opts)
    scale = math.exp(b * math.log(y) - kernels.log_beta(b, c - b))
    return EvalResult(scale * inner.value, scale * inner.abs_err_est, inner.effort, inner.converged)


def _direct_upper(b, c, g, y, opts) -> EvalResult:
    span = 1.0 - y
    inner = kernels.jacobi_integrate(
        lambda u: (1.0 - u * span) ** (b - 1.0) * g(1.0 - u * span), c - b - 1.0, 0.0, opts
    )
    scale = math.exp((c - b) * math.log1p(-y) - kernels.log_beta(b, c - b))
    return EvalResult(scale * inner.value, scale * inner.abs_err_est, inner.effort, inner.converged)


def _complete_euler(b, c, g, opts) -> EvalResult:
    inner = kernels.jacobi_integrate(g, b - 1.0, c - b - 1.0, opts)
    scale = math.exp(-kernels.log_beta(b, c - b))
    return EvalResult(scale * inner.value, scale * inner.abs_err_est, inner.effort, inner.converged)


def _combine(whole: EvalResult, other: EvalResult) -> EvalResult:
    return EvalResult(
        whole.value - other.value,
        whole.abs_err_est + other.abs_err_est,
        whole.effort + other.effort,
        whole.converged and other.converged,
    )


def _ratio_terms(b: float, c: float, y: float, variant: Variant,
                 coefficient_step: Callable[[int], float]) -> Iterator[float]:
    """产生 coef_n · ratio_n，coef_{n+1} = coef_n · coefficient_step(n)；系数恰为 0 时截断。"""
    coef = 1.0
    n = 0
    while True:
        ratios = ratio_sequence(b, c, y, variant, n, _RATIO_CHUNK)
        for r in ratios:
            yield coef * float(r)
            coef *= coefficient_step(n)
            n += 1
            if coef == 0.0:
                return


def ihyp_2f1(p: Hyp2F1Params, method: Union[str, Method] = Method.AUTO,
             opts: Optional[EvalOptions] = None) -> EvalResult:
    """
    不完全 Gauss 超几何函数

    级数: Σ (a)_n [b,c;y]_n xⁿ/n!（上变体用 {b,c;y}_n）。
    积分: (1/B(b,c-b)) ∫ t^{b-1}(1-t)^{c-b-1}(1-xt)^{-a} dt，区间 [0,y] 或 [y,1]。

    下变体的级数项按 (xy)ⁿ 衰减，收敛半径为 |x| < 1/y；上变体为 |x| < 1。
    auto 在 |x|y <= 0.95（下）或 |x| <= 0.95（上）时用级数，否则用积分。
    """
    method = Method.from_string(method)
    reach = abs(p.x) * p.y if p.variant is Variant.LOWER else abs(p.x)
    if method is Method.AUTO:
        method = Method.SERIES if reach <= _SERIES_MARGIN else Method.INTEGRAL

    if method is Method.SERIES:
        if not reach < 1:
            raise DomainError(f"级数路径超出收敛半径: variant={p.variant.value}, x={p.x}, y={p.y}")
        a, x = p.a, p.x
        terms = _ratio_terms(p.b, p.c, p.y, p.variant, lambda n: (a + n) * x / (n + 1))
        return kernels.sum_series(terms, opts)

    a, x = p.a, p.x
    return incomplete_euler_integral(
        p.b, p.c, lambda t: (1.0 - x * t) ** (-a), p.y, p.variant, opts, complete_ok=x <= _COMPLEMENT_SWITCH
    )


def ihyp_1f1(p: Hyp1F1Params, method: Union[str, Method] = Method.AUTO,
             opts: Optional[EvalOptions] = None) -> EvalResult:
    """
    不完全合流超几何函数

    级数: Σ [a,b;y]_n xⁿ/n!（上变体用 {a,b;y}_n），对 x 是整函数。
    积分: (1/B(a,b-a)) ∫ t^{a-1}(1-t)^{b-a-1} e^{xt} dt。
    auto 在 x < -1 时走积分，避免交错级数的相消。
    """
    method = Method.from_string(method)
    if method is Method.AUTO:
        method = Method.SERIES if p.x >= _CONFLUENT_SERIES_FLOOR else Method.INTEGRAL

    x = p.x
    if method is Method.SERIES:
        terms = _ratio_terms(p.a, p.b, p.y, p.variant, lambda n: x / (n + 1))
        return kernels.sum_series(terms, opts)
    return incomplete_euler_integral(p.a, p.b, lambda t: np.exp(x * t), p.y, p.variant, opts, complete_ok=True)


def evaluate(params: Union[Hyp2F1Params, Hyp1F1Params], method: Union[str, Method] = Method.AUTO,
             opts: Optional[EvalOptions] = None) -> EvalResult:
    """按参数类型分派到 ihyp_2f1 或 ihyp_1f1。"""
    if isinstance(params, Hyp2F1Params):
        return ihyp_2f1(params, method, opts)
    return ihyp_1f1(params, method, opts)


def ihyp_2f1_at_one(variant: Union[str, Variant], a: float, b: float, c: float, y: float,
                    opts: Optional[EvalOptions] = None) -> EvalResult:
    """
    x = 1 处的闭式值，要求 c - a - b > 0

        ₂F₁(a,[b,c;y];1) = G - (1-y)^{c-b-a} y^b / (B(b,c-b)(c-a-b)) · ₂F₁(c-a, 1; 1+c-b-a; 1-y)
        ₂F₁(a,{b,c;y};1) = G - (1-y)^{c-b-a} y^b / (B(b,c-b) b) · ₂F₁(c-a, 1; b+1; y)

    其中 G = Γ(c)Γ(c-a-b)/(Γ(c-a)Γ(c-b))。两个变体之和为 G，所以减去的那一项正是另一变体的值：
    y <= 1/2 时下变体直接取第二式中的减项，上变体取 G 减去它；y > 1/2 时反过来用第一式。
    级数的自变量因此不超过 1/2。
    """
    variant = Variant.from_string(variant)
    check_ratio_params(b, c, y)
    if not c - a - b > 0:
        raise DomainError(f"x = 1 的值要求 c - a - b > 0，实际为 {c - a - b}")

    whole = kernels.gauss_summation(a, b, c)
    if y == 0:
        value = 0.0 if variant is Variant.LOWER else whole
        return EvalResult(value, 0.0, 0, True)

    log_scale = (c - b - a) * math.log1p(-y) + b * math.log(y) - kernels.log_beta(b, c - b)
    if y <= 0.5:
        inner = kernels.complete_2f1(c - a, 1.0, b + 1.0, y, opts)
        scale = math.exp(log_scale) / b
        direct = Variant.LOWER
    else:
        inner = kernels.complete_2f1(c - a, 1.0, 1.0 + c - b - a, 1.0 - y, opts)
        scale = math.exp(log_scale) / (c - a - b)
        direct = Variant.UPPER
    part = scale * inner.value
    value = part if variant is direct else whole - part
    return EvalResult(value, abs(scale) * inner.abs_err_est, inner.effort, inner.converged)


def ihyp_2f1_at_one_quadrature(variant: Union[str, Variant], a: float, b: float, c: float, y: float,
                               opts: Optional[EvalOptions] = None) -> float:
    """
    x = 1 时 Euler 积分直接化为不完全贝塔：
    下变体 B_y(b, c-a-b)/B(b,c-b)，上变体 B_{1-y}(c-a-b, b)/B(b,c-b)。全部走 Gauss-Jacobi 求积。
    """
    variant = Variant.from_string(variant)
    check_ratio_params(b, c, y)
    if not c - a - b > 0:
        raise DomainError(f"x = 1 的值要求 c - a - b > 0，实际为 {c - a - b}")
    norm = math.exp(-kernels.log_beta(b, c - b))
    if variant is Variant.LOWER:
        return kernels.incomplete_beta(y, b, c - a - b, opts, method="quadrature") * norm
    if y == 0:
        return math.exp(kernels.log_beta(c - a - b, b)) * norm
    return kernels.incomplete_beta(1.0 - y, c - a - b, b, opts, method="quadrature") * norm


class FunctionKind(Enum):
    """x 导数公式所作用的函数族"""
    TWO_F1 = "2f1"
    ONE_F1 = "1f1"

    @classmethod
    def from_string(cls, value: Union[str, "FunctionKind"]) -> "FunctionKind":
        if isinstance(value, cls):
            return value
        try:
            return cls(value.lower())
        except ValueError:
            raise ValueError(f"不支持的函数族: {value}，支持的函数族: {[k.value for k in cls]}")


def derivative_shift(kind: Union[str, FunctionKind], params: Union[Hyp2F1Params, Hyp1F1Params],
                     n: int) -> Tuple[float, Union[Hyp2F1Params, Hyp1F1Params]]:
    """
    n 阶 x 导数 = 系数 · 参数整体上移 n 后的同一函数

        dⁿ/dxⁿ ₂F₁(a,[b,c;y];x) = (a)_n(b)_n/(c)_n · ₂F₁(a+n,[b+n,c+n;y];x)
        dⁿ/dxⁿ ₁F₁([a,b;y];x)   = (a)_n/(b)_n · ₁F₁([a+n,b+n;y];x)

    两个变体形式相同。

    Returns:
        (系数, 上移后的参数)
    """
    kind = FunctionKind.from_string(kind)
    if n < 1:
        raise DomainError(f"导数阶数必须 >= 1，实际为 {n}")
    if kind is FunctionKind.TWO_F1:
        if not isinstance(params, Hyp2F1Params):
            raise ValueError("2f1 导数公式需要 Hyp2F1Params")
        coefficient = pochhammer(params.a, n) * pochhammer(params.b, n) / pochhammer(params.c, n)
        return coefficient, replace(params, a=params.a + n, b=params.b + n, c=params.c + n)
    if not isinstance(params, Hyp1F1Params):
        raise ValueError("1f1 导数公式需要 Hyp1F1Params")
    coefficient = pochhammer(params.a, n) / pochhammer(params.b, n)
    return coefficient, replace(params, a=params.a + n, b=params.b + n)


class TransformKind(Enum):
    """变换公式；名称里的变体指左端函数的变体"""
    PF_LOWER = "pf_lower"
    PF_UPPER = "pf_upper"
    KUMMER_UPPER = "kummer_upper"
    KUMMER_LOWER = "kummer_lower"

    @classmethod
    def from_string(cls, value: Union[str, "TransformKind"]) -> "TransformKind":
        if isinstance(value, cls):
            return value
        try:
            return cls(value.lower())
        except ValueError:
            raise ValueError(f"不支持的变换: {value}，支持的变换: {[k.value for k in cls]}")

    @property
    def lhs_variant(self) -> Variant:
        return Variant.LOWER if self in (TransformKind.PF_LOWER, TransformKind.KUMMER_LOWER) else Variant.UPPER

    @property
    def confluent(self) -> bool:
        return self in (TransformKind.KUMMER_UPPER, TransformKind.KUMMER_LOWER)

    @classmethod
    def for_params(cls, params: Union[Hyp2F1Params, Hyp1F1Params]) -> "TransformKind":
        if isinstance(params, Hyp1F1Params):
            return cls.KUMMER_LOWER if params.variant is Variant.LOWER else cls.KUMMER_UPPER
        return cls.PF_LOWER if params.variant is Variant.LOWER else cls.PF_UPPER


def transform_params(kind: Union[str, TransformKind], params: Union[Hyp2F1Params, Hyp1F1Params]
                     ) -> Tuple[float, Union[Hyp2F1Params, Hyp1F1Params]]:
    """
    左端函数的参数 -> (前置因子, 右端函数的参数)

        ₂F₁(a,[β,γ;y];z) = (1-z)^{-a} ₂F₁(a,{γ-β,γ;1-y}; z/(z-1))
        ₂F₁(a,{β,γ;y};z) = (1-z)^{-a} ₂F₁(a,[γ-β,γ;1-y]; z/(z-1))
        ₁F₁({α,β;y};z)   = e^z ₁F₁([β-α,β;1-y]; -z)
        ₁F₁([α,β;y];z)   = e^z ₁F₁({β-α,β;1-y}; -z)

    右端截断点为 1 - y，因此要求 y > 0。
    """
    kind = TransformKind.from_string(kind)
    if kind.confluent != isinstance(params, Hyp1F1Params):
        raise ValueError(f"变换 {kind.value} 与参数类型 {type(params).__name__} 不匹配")
    if params.variant is not kind.lhs_variant:
        raise ValueError(f"变换 {kind.value} 的左端是 {kind.lhs_variant.value} 变体，参数却是 {params.variant.value}")
    if not params.y > 0:
        raise DomainError("变换把截断点映射为 1-y，要求 y > 0")

    target = Variant.UPPER if kind.lhs_variant is Variant.LOWER else Variant.LOWER
    if isinstance(params, Hyp1F1Params):
        rhs = Hyp1F1Params(params.b - params.a, params.b, 1.0 - params.y, -params.x, target)
        return math.exp(params.x), rhs

    z = params.x
    if not z < 1:
        raise DomainError(f"Pfaff 型变换要求 z < 1，实际为 {z}")
    rhs = Hyp2F1Params(params.a, params.c - params.b, params.c, 1.0 - params.y, z / (z - 1.0), target)
    return (1.0 - z) ** (-params.a), rhs


def transform(kind: Union[str, TransformKind], params: Union[Hyp2F1Params, Hyp1F1Params],
              opts: Optional[EvalOptions] = None) -> EvalResult:
    """计算变换公式的右端。"""
    prefactor, rhs = transform_params(kind, params)
    result = evaluate(rhs, Method.AUTO, opts)
    return EvalResult(prefactor * result.value, abs(prefactor) * result.abs_err_est, result.effort, result.converged)


def transform_round_trip(params: Union[Hyp2F1Params, Hyp1F1Params],
                         opts: Optional[EvalOptions] = None) -> Tuple[float, float]:
    """
    依次应用一对互逆的变换（下->上->下 或 上->下->上）

    Returns:
        (原始值, 往返后的值)
    """
    first = TransformKind.for_params(params)
    factor_one, middle = transform_params(first, params)
    second = TransformKind.for_params(middle)
    factor_two, back = transform_params(second, middle)
    original = evaluate(params, Method.AUTO, opts).value
    returned = factor_one * factor_two * evaluate(back, Method.AUTO, opts).value
    return original, returned


def difference_relation_residual(a: float, b: float, h: float, y: float, x: float,
                                 opts: Optional[EvalOptions] = None) -> float:
    """
    差分关系的左端 - 右端：

        (b+h-1)/B(b,h) · y^{b-1}(1-y)^{h-1}(1-xy)^{-a}
          = ₂F₁(a,[b,b+h-1;y];x) + ₂F₁(a,[b-1,b+h-1;y];x) - a x (b+h-1) ₂F₁(a+1,[b,b+h;y];x)

    右端三项都走积分路径。要求 b > 1、h > 1，使三个比值参数都有定义。
    """
    if not (b > 1 and h > 1):
        raise DomainError(f"差分关系要求 b > 1 且 h > 1，实际为 b={b}, h={h}")
    if not x * y < 1:
        raise DomainError(f"差分关系要求 x*y < 1，实际为 x={x}, y={y}")

    lhs = (b + h - 1.0) * math.exp(-kernels.log_beta(b, h)) * y ** (b - 1.0) * (1.0 - y) ** (h - 1.0) * (1.0 - x * y) ** (-a)
    first = ihyp_2f1(Hyp2F1Params(a, b, b + h - 1.0, y, x), Method.INTEGRAL, opts).value
    second = ihyp_2f1(Hyp2F1Params(a, b - 1.0, b + h - 1.0, y, x), Method.INTEGRAL, opts).value
    third = ihyp_2f1(Hyp2F1Params(a + 1.0, b, b + h, y, x), Method.INTEGRAL, opts).value
    rhs = first + second - a * x * (b + h - 1.0) * third
    logger.debug(f"差分关系 (a={a}, b={b}, h={h}, y={y}, x={x}): 左端 {lhs:.12g}, 右端 {rhs:.12g}")
    return lhs - rhs


class MomentKind(Enum):
    """y 矩积分关系"""
    POWER = "power"
    POWER_UNIT = "power-unit"
    COMPLEMENT = "complement"
    MEAN = "mean"

    @classmethod
    def from_string(cls, value: Union[str, "MomentKind"]) -> "MomentKind":
        if isinstance(value, cls):
            return value
        try:
            return cls(value.lower())
        except ValueError:
            raise ValueError(f"不支持的矩关系: {value}，支持的关系: {[k.value for k in cls]}")


def y_moment_residual(kind: Union[str, MomentKind], k: int, a: float, b: float, c: float, x: float,
                      opts: Optional[EvalOptions] = None) -> float:
    """
    对截断点 y 积分的关系，返回 左端 - 右端

        power:      ∫_0^1 y^{k-1} ₂F₁(a,[b,c-k;y];x) dy
                 = (1/k)[₂F₁(a,b;c-k;x) - Γ(c-k)Γ(b+k)/(Γ(b)Γ(c)) ₂F₁(a,b+k;c;x)]，要求 c-k-b > 0
        power-unit: power 取 k = 1
        complement: ∫_0^1 (1-y)^{k-1} ₂F₁(a,[b,c;y];x) dy = (1/k) Γ(c)Γ(c-b+k)/(Γ(c-b)Γ(c+k)) ₂F₁(a,b;c+k;x)
        mean:       (c/(c-b)) ∫_0^1 ₂F₁(a,[b,c;y];x) dy = ₂F₁(a,b;c+1;x)

    complement 的权取 (1-y)^{k-1}，即交换积分次序后真正得到的形式；k = 1 时与 y^{k-1} 一致。
    y 积分在 1 - 1e-4 处分段，尾段用 完全函数 - 上变体 求被积函数。
    """
    kind = MomentKind.from_string(kind)
    if kind in (MomentKind.POWER_UNIT, MomentKind.MEAN):
        k = 1
    if k < 1:
        raise DomainError(f"k 必须是正整数，实际为 {k}")
    if not abs(x) < 1:
        raise DomainError(f"y 矩关系要求 |x| < 1，实际为 {x}")

    if kind in (MomentKind.POWER, MomentKind.POWER_UNIT):
        inner_c = c - k
        if not inner_c - b > 0:
            raise DomainError(f"{kind.value} 要求 c - k - b > 0，实际为 {inner_c - b}")

        def weight(t):
            return t ** (k - 1)

        log_coef = special.gammaln(c - k) + special.gammaln(b + k) - special.gammaln(b) - special.gammaln(c)
        rhs = (kernels.complete_2f1(a, b, c - k, x, opts).value
               - math.exp(log_coef) * kernels.complete_2f1(a, b + k, c, x, opts).value) / k
        lhs_scale = 1.0
    else:
        inner_c = c
        check_ratio_params(b, c, 0.0)

        if kind is MomentKind.COMPLEMENT:
            def weight(t):
                return (1.0 - t) ** (k - 1)

            log_coef = special.gammaln(c) + special.gammaln(c - b + k) - special.gammaln(c - b) - special.gammaln(c + k)
            rhs = math.exp(log_coef) * kernels.complete_2f1(a, b, c + k, x, opts).value / k
            lhs_scale = 1.0
        else:
            def weight(t):
                return 1.0

            rhs = kernels.complete_2f1(a, b, c + 1.0, x, opts).value
            lhs_scale = c / (c - b)

    lhs = lhs_scale * _integrate_over_cutoff(a, b, inner_c, x, weight, opts)
    logger.debug(f"y 矩关系 {kind.value} (k={k}, a={a}, b={b}, c={c}, x={x}): 左端 {lhs:.12g}, 右端 {rhs:.12g}")
    return lhs - rhs


def _integrate_over_cutoff(a, b, c, x, weight, opts) -> float:
    split = 1.0 - _MOMENT_SPLIT
    whole = kernels.complete_2f1(a, b, c, x, opts).value

    def body(t: float) -> float:
        return weight(t) * ihyp_2f1(Hyp2F1Params(a, b, c, t, x, Variant.LOWER), Method.AUTO, opts).value

    def tail(t: float) -> float:
        upper = ihyp_2f1(Hyp2F1Params(a, b, c, t, x, Variant.UPPER), Method.INTEGRAL, opts).value
        return weight(t) * (whole - upper)

    head = kernels.adaptive_integrate(body, 0.0, split, opts)
    rest = kernels.adaptive_integrate(tail, split, 1.0, opts)
    return head.value + rest.value
