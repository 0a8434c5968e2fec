"""
不完全 Pochhammer 比值 [b,c;y]_n 与 {b,c;y}_n
"""

import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Union

import numpy as np
from scipy import special

from .config.eval_config import EvalOptions
from . import kernels
from .kernels import EvalResult
from .exceptions import DomainError

logger = logging.getLogger(__name__)

# n 不超过此值时直接连乘
_DIRECT_PRODUCT_MAX = 64


class Variant(Enum):
    """不完全函数的两种变体：下（方括号，[0,y] 上的积分）与上（花括号，[y,1] 上的积分）"""
    LOWER = "lower"
    UPPER = "upper"

    @classmethod
    def from_string(cls, value: Union[str, "Variant"]) -> "Variant":
        if isinstance(value, cls):
            return value
        try:
            return cls(value.lower())
        except ValueError:
            raise ValueError(f"不支持的变体: {value}，支持的变体: {[v.value for v in cls]}")


def check_ratio_params(b: float, c: float, y: float) -> None:
    if not b > 0:
        raise DomainError(f"比值参数要求 b > 0，实际为 {b}")
    if not c - b > 0:
        raise DomainError(f"比值参数要求 c > b，实际为 b={b}, c={c}")
    if not 0 <= y < 1:
        raise DomainError(f"截断点 y 必须位于 [0, 1)，实际为 {y}")


@dataclass(frozen=True)
class RatioSpec:
    """一个不完全 Pochhammer 比值的地址 (b, c, n, y) 及其变体"""
    b: float
    c: float
    n: int
    y: float
    variant: Variant = Variant.LOWER

    def __post_init__(self):
        object.__setattr__(self, "variant", Variant.from_string(self.variant))
        check_ratio_params(self.b, self.c, self.y)
        if self.n < 0 or int(self.n) != self.n:
            raise DomainError(f"n 必须是非负整数，实际为 {self.n}")
        object.__setattr__(self, "n", int(self.n))


@dataclass(frozen=True)
class PochhammerArg:
    """升阶乘 (λ)_n 的参数"""
    lam: float
    n: int

    def __post_init__(self):
        if self.n < 0:
            raise DomainError(f"n 必须 >= 0，实际为 {self.n}")

    def value(self) -> float:
        return pochhammer(self.lam, self.n)


def pochhammer(lam: float, n: int) -> float:
    """
    升阶乘 (λ)_n = Γ(λ+n)/Γ(λ)

    n <= 64 时直接连乘，否则用带符号的对数伽马比值。
    """
    if n < 0:
        raise DomainError(f"n 必须 >= 0，实际为 {n}")
    if n <= _DIRECT_PRODUCT_MAX or kernels.is_nonpositive_integer(lam):
        if kernels.is_nonpositive_integer(lam) and n > -lam:
            return 0.0
        result = 1.0
        for k in range(n):
            result *= lam + k
        return result
    log_value = special.gammaln(lam + n) - special.gammaln(lam)
    sign = special.gammasgn(lam + n) * special.gammasgn(lam)
    return float(sign * math.exp(log_value))


def complete_ratio(b: float, c: float, n: int) -> float:
    """(b)_n/(c)_n，b, c > 0，在对数空间计算。"""
    if not (b > 0 and c > 0):
        raise DomainError(f"complete_ratio 要求 b, c > 0，实际为 ({b}, {c})")
    log_value = special.gammaln(b + n) - special.gammaln(b) - special.gammaln(c + n) + special.gammaln(c)
    return float(math.exp(log_value))


def ratio_sequence(b: float, c: float, y: float, variant: Union[str, Variant],
                   start: int = 0, count: int = 1) -> np.ndarray:
    """
    连续 n = start, ..., start+count-1 的比值，向量化计算

    比值写成 I·exp(lnB(b+n,c-b) - lnB(b,c-b))，两个因子分别不会下溢。

    Returns:
        长度为 count 的数组
    """
    variant = Variant.from_string(variant)
    check_ratio_params(b, c, y)
    n = np.arange(start, start + count, dtype=float)
    log_prefactor = special.betaln(b + n, c - b) - special.betaln(b, c - b)
    if variant is Variant.LOWER:
        regularized = special.betainc(b + n, c - b, y)
    else:
        regularized = special.betaincc(b + n, c - b, y)
    return regularized * np.exp(log_prefactor)


def ratio(spec: RatioSpec, opts: Optional[EvalOptions] = None) -> EvalResult:
    """
    [b,c;y]_n = B_y(b+n,c-b)/B(b,c-b)，{b,c;y}_n = B_{1-y}(c-b,b+n)/B(b,c-b)
    """
    value = float(ratio_sequence(spec.b, spec.c, spec.y, spec.variant, spec.n, 1)[0])
    return EvalResult(value, 16 * kernels.MACHINE_EPS * abs(value), 1, True)


def ratio_via_2f1(spec: RatioSpec, opts: Optional[EvalOptions] = None) -> EvalResult:
    """
    经由 ₂F₁ 闭式计算同一个比值：

        [b,c;y]_n = y^{b+n}(1-y)^{c-b} / ((b+n)B(b,c-b)) · ₂F₁(1, c+n; b+n+1; y)
        {b,c;y}_n = y^{b+n}(1-y)^{c-b} / ((c-b)B(b,c-b)) · ₂F₁(1, c+n; 1+c-b; 1-y)

    上变体在 y = 0 时内部级数的自变量为 1，不收敛。
    """
    b, c, n, y = spec.b, spec.c, spec.n, spec.y
    if spec.variant is Variant.LOWER:
        if y == 0:
            return EvalResult(0.0, 0.0, 0, True)
        inner = kernels.complete_2f1(1.0, c + n, b + n + 1.0, y, opts)
        log_prefactor = (b + n) * math.log(y) + (c - b) * math.log1p(-y) - math.log(b + n)
    else:
        if y == 0:
            raise DomainError("上变体的 ₂F₁ 表示在 y = 0 时自变量 1-y = 1，级数发散")
        inner = kernels.complete_2f1(1.0, c + n, 1.0 + c - b, 1.0 - y, opts)
        log_prefactor = (b + n) * math.log(y) + (c - b) * math.log1p(-y) - math.log(c - b)

    scale = math.exp(log_prefactor - kernels.log_beta(b, c - b))
    return EvalResult(scale * inner.value, scale * inner.abs_err_est, inner.effort, inner.converged)


def decomposition_residual(b: float, c: float, n: int, y: float) -> float:
    """[b,c;y]_n + {b,c;y}_n - (b)_n/(c)_n"""
    lower = ratio(RatioSpec(b, c, n, y, Variant.LOWER)).value
    upper = ratio(RatioSpec(b, c, n, y, Variant.UPPER)).value
    return lower + upper - complete_ratio(b, c, n)


def derivative_identity_residual(spec: RatioSpec, h: float) -> float:
    """
    用有限差分检验比值的 n 阶 y 导数表示

    下变体:  [b,c;y]_n = (-1)^n Γ(c)/(Γ(c-b+n)Γ(b)) · y^{b+n} · dⁿ/dyⁿ[y^{-b} B_y(b, c-b+n)]
    上变体:  {b,c;y}_n = Γ(b+n)/(Γ(b+2n) B(b,c-b)) · (1-y)^{c-b}
                         · dⁿ/dyⁿ[(1-y)^{b-c+n} B_{1-y}(c-b-n, b+2n)]，要求 c-b-n > 0

    导数用二阶中心差分加一次 Richardson 外推计算。

    Args:
        spec: 比值地址，n >= 1
        h: 差分步长

    Returns:
        右端 - ratio(spec)
    """
    b, c, n, y = spec.b, spec.c, spec.n, spec.y
    if n < 1:
        raise DomainError(f"导数公式要求 n >= 1，实际为 {n}")
    if not (y - n * h / 2 > 0 and y + n * h / 2 < 1):
        raise DomainError(f"差分模板超出 (0,1)：y={y}, n={n}, h={h}")

    if spec.variant is Variant.LOWER:
        def inner(t: float) -> float:
            return t ** (-b) * kernels.incomplete_beta(t, b, c - b + n)

        log_coef = special.gammaln(c) - special.gammaln(c - b + n) - special.gammaln(b)
        scale = (-1) ** n * math.exp(log_coef) * y ** (b + n)
    else:
        if not c - b - n > 0:
            raise DomainError(f"上变体的导数公式要求 c - b - n > 0，实际为 {c - b - n}")

        def inner(t: float) -> float:
            return (1.0 - t) ** (b - c + n) * kernels.incomplete_beta(1.0 - t, c - b - n, b + 2 * n)

        log_coef = special.gammaln(b + n) - special.gammaln(b + 2 * n) - kernels.log_beta(b, c - b)
        scale = math.exp(log_coef) * (1.0 - y) ** (c - b)

    derivative = kernels.richardson_derivative(inner, y, n, h)
    residual = scale * derivative - ratio(spec).value
    logger.debug(f"比值导数公式 ({spec.variant.value}, b={b}, c={c}, n={n}, y={y}, h={h}): 残差 {residual:.3e}")
    return residual
