"""
不完全 ₂F₁ 的线性与双线性生成关系

左端截断到 N 项后与闭式右端比较，同时给出截断尾项的解析上界，
使残差超限时可以区分是截断还是求值误差。
"""

import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Optional, Tuple, Union

from scipy import special

from .config.eval_config import EvalOptions
from .exceptions import DomainError
from .appell import AppellF1Params, AppellF2Params, appell_f1, appell_f2
from .hypergeometric import Hyp2F1Params, Method, ihyp_2f1
from .pochhammer import Variant, check_ratio_params, ratio_sequence

logger = logging.getLogger(__name__)

# 自适应截断的目标尾项与项数上限
TAIL_TARGET = 1e-8
MAX_TERMS = 200


class GenRelKind(Enum):
    """线性生成关系"""
    SHIFT = "shift"
    NEGSHIFT = "negshift"

    @classmethod
    def from_string(cls, value: Union[str, "GenRelKind"]) -> "GenRelKind":
        if isinstance(value, cls):
            return value
        try:
            return cls(value.lower())
        except ValueError:
            raise ValueError(f"不支持的生成关系: {value}，支持的关系: {[k.value for k in cls]}")


@dataclass(frozen=True)
class GenRelSpec:
    """
    生成关系的参数

    shift 用 lam, alpha, beta, z, t；negshift 另用 rho；
    bilinear 另用 gamma, delta 与 x。n_terms 为 None 时按尾项上界自动选择。
    """
    lam: float
    alpha: float
    beta: float
    y: float
    z: float
    t: float
    rho: float = 1.0
    gamma: float = 1.0
    delta: float = 2.0
    x: float = 0.0
    n_terms: Optional[int] = None

    def __post_init__(self):
        if not self.lam > 0:
            raise DomainError(f"生成关系要求 lambda > 0，实际为 {self.lam}")
        check_ratio_params(self.alpha, self.beta, self.y)
        if not abs(self.t) < 1:
            raise DomainError(f"生成关系要求 |t| < 1，实际为 {self.t}")
        if self.n_terms is not None and self.n_terms < 0:
            raise DomainError(f"截断项数必须 >= 0，实际为 {self.n_terms}")


def _reach(variant: Variant, y: float) -> float:
    # 积分区间内 s 的最大值
    return y if variant is Variant.LOWER else 1.0


def _tail_bound(lam: float, t: float, q: float, scale: float, n: int) -> float:
    """
    Σ_{k>n} C|(λ)_k|/k! (|t|q)^k 的几何上界

    k > n 后相邻项之比不超过 r·max(1, (λ+n+1)/(n+2))，r = |t|q。
    """
    r = abs(t) * q
    if r == 0:
        return 0.0
    rho = r * max(1.0, (lam + n + 1.0) / (n + 2.0))
    if rho >= 1:
        return math.inf
    log_term = special.gammaln(lam + n + 1.0) - special.gammaln(lam) - special.gammaln(n + 2.0)
    return scale * math.exp(log_term + (n + 1) * math.log(r)) / (1.0 - rho)


def _choose_terms(spec: GenRelSpec, q: float, scale: float) -> Tuple[int, float]:
    if spec.n_terms is not None:
        return spec.n_terms, _tail_bound(spec.lam, spec.t, q, scale, spec.n_terms)
    for n in range(MAX_TERMS + 1):
        tail = _tail_bound(spec.lam, spec.t, q, scale, n)
        if tail <= TAIL_TARGET:
            return n, tail
    logger.warning(f"生成关系在 {MAX_TERMS} 项内未达到尾项目标 {TAIL_TARGET}，尾项上界 {tail:.3e}")
    return MAX_TERMS, tail


def _truncated_sum(lam: float, t: float, n_terms: int, factor: Callable[[int], float]) -> float:
    """Σ_{n=0}^{N} (λ)_n/n! · factor(n) · tⁿ"""
    total = 0.0
    coef = 1.0
    for n in range(n_terms + 1):
        total += coef * factor(n)
        coef *= (lam + n) * t / (n + 1)
        if coef == 0.0:
            break
    return total


def genrel_linear_residual(kind: Union[str, GenRelKind], variant: Union[str, Variant], spec: GenRelSpec,
                           opts: Optional[EvalOptions] = None) -> Tuple[float, float]:
    """
    线性生成关系

        shift:    Σ (λ)_n/n! ₂F₁(λ+n,[α,β;y];z) tⁿ = (1-t)^{-λ} ₂F₁(λ,[α,β;y];z/(1-t))
        negshift: Σ (λ)_n/n! ₂F₁(ρ-n,[α,β;y];z) tⁿ = (1-t)^{-λ} F1[α,ρ,λ;β;z,-zt/(1-t);y]

    上变体把所有方括号换成花括号。

    Returns:
        (|截断左端 - 右端|, 截断尾项上界)
    """
    kind = GenRelKind.from_string(kind)
    variant = Variant.from_string(variant)
    lam, alpha, beta, y, z, t = spec.lam, spec.alpha, spec.beta, spec.y, spec.z, spec.t
    reach = _reach(variant, y)
    mass = float(ratio_sequence(alpha, beta, y, variant, 0, 1)[0])

    if kind is GenRelKind.SHIFT:
        base = 1.0 - max(z, 0.0) * reach
        if not base > 0 or not 1.0 - max(z / (1.0 - t), 0.0) * reach > 0:
            raise DomainError(f"shift 生成关系的被积函数在区间内奇异: z={z}, t={t}, y={y}")
        q = 1.0 / base
        scale = mass * base ** (-lam)
        n_terms, tail = _choose_terms(spec, q, scale)

        def factor(n: int) -> float:
            return ihyp_2f1(Hyp2F1Params(lam + n, alpha, beta, y, z, variant), Method.AUTO, opts).value

        lhs = _truncated_sum(lam, t, n_terms, factor)
        rhs = (1.0 - t) ** (-lam) * ihyp_2f1(
            Hyp2F1Params(lam, alpha, beta, y, z / (1.0 - t), variant), Method.AUTO, opts
        ).value
    else:
        rho = spec.rho
        if not abs(z) * reach < 1:
            raise DomainError(f"negshift 生成关系要求 |z|·s < 1，实际为 z={z}, y={y}")
        q = 1.0 + abs(z) * reach
        scale = mass * max((1.0 - abs(z) * reach) ** (-rho), q ** (-rho))
        n_terms, tail = _choose_terms(spec, q, scale)

        def factor(n: int) -> float:
            return ihyp_2f1(Hyp2F1Params(rho - n, alpha, beta, y, z, variant), Method.AUTO, opts).value

        lhs = _truncated_sum(lam, t, n_terms, factor)
        w = -z * t / (1.0 - t)
        rhs = (1.0 - t) ** (-lam) * appell_f1(
            AppellF1Params(alpha, rho, lam, beta, z, w, y, variant), Method.SERIES, opts
        ).value

    residual = abs(lhs - rhs)
    logger.debug(f"生成关系 {kind.value} ({variant.value}, N={n_terms}): 左端 {lhs:.12g}, 右端 {rhs:.12g}, "
                 f"残差 {residual:.3e}, 尾项上界 {tail:.3e}")
    return residual, tail


def genrel_bilinear_residual(variant: Union[str, Variant], spec: GenRelSpec,
                             opts: Optional[EvalOptions] = None) -> Tuple[float, float]:
    """
    双线性生成关系

        Σ (λ)_n/n! ₂F₁(-n,[γ,δ;y];x) ₂F₁(λ+n,[α,β;y];z) tⁿ
            = (1-t)^{-λ} F2[λ,α,γ;β,δ; z/(1-t), -xt/(1-t); y]

    多项式因子 ₂F₁(-n,[γ,δ;y];x) 走积分路径，避免级数在 (−n)_k 处截断带来的相消。

    Returns:
        (|截断左端 - 右端|, 截断尾项上界)
    """
    variant = Variant.from_string(variant)
    lam, alpha, beta, y, z, t = spec.lam, spec.alpha, spec.beta, spec.y, spec.z, spec.t
    gamma, delta, x = spec.gamma, spec.delta, spec.x
    check_ratio_params(gamma, delta, y)
    reach = _reach(variant, y)

    base = 1.0 - max(z, 0.0) * reach
    if not base > 0:
        raise DomainError(f"双线性生成关系的被积函数在区间内奇异: z={z}, y={y}")
    mass = float(ratio_sequence(alpha, beta, y, variant, 0, 1)[0])
    poly_mass = float(ratio_sequence(gamma, delta, y, variant, 0, 1)[0])
    q = (1.0 + abs(x) * reach) / base
    scale = poly_mass * mass * base ** (-lam)
    n_terms, tail = _choose_terms(spec, q, scale)

    def factor(n: int) -> float:
        poly = ihyp_2f1(Hyp2F1Params(-float(n), gamma, delta, y, x, variant), Method.INTEGRAL, opts).value
        return poly * ihyp_2f1(Hyp2F1Params(lam + n, alpha, beta, y, z, variant), Method.AUTO, opts).value

    lhs = _truncated_sum(lam, t, n_terms, factor)
    rhs = (1.0 - t) ** (-lam) * appell_f2(
        AppellF2Params(lam, alpha, gamma, beta, delta, z / (1.0 - t), -x * t / (1.0 - t), y, variant),
        Method.SERIES, opts,
    ).value

    residual = abs(lhs - rhs)
    logger.debug(f"双线性生成关系 ({variant.value}, N={n_terms}): 左端 {lhs:.12g}, 右端 {rhs:.12g}, "
                 f"残差 {residual:.3e}, 尾项上界 {tail:.3e}")
    return residual, tail
