"""
不完全 Appell 函数 F1[a,b,c;d;x,z;y]、F1{…}、F2[a,b,c;d,e;x,z;y]、F2{…}

双重级数按反对角线 m+n = k 求和，每条对角线是两个一维系数序列的卷积；
积分路径对 F1 是一维 Euler 积分，对 F2 是张量积 Gauss-Jacobi 二维求积。
"""

import logging
import math
from dataclasses import dataclass
from typing import Callable, Iterator, Optional, Tuple, Union

import numpy as np
from scipy import special

from .config.eval_config import EvalOptions
from . import kernels
from .kernels import EvalResult
from .exceptions import DomainError
from .hypergeometric import Method, incomplete_euler_integral
from .pochhammer import Variant, check_ratio_params, ratio_sequence

logger = logging.getLogger(__name__)

# 系数数组的初始长度，不够时加倍
_INITIAL_DIAGONALS = 64
_COMPLEMENT_SWITCH = 0.9
# F2 张量积求积每轴的默认节点上限
_F2_MAX_NODES = 256


@dataclass(frozen=True)
class AppellF1Params:
    """F1[a,b,c;d;x,z;y] / F1{a,b,c;d;x,z;y} 的参数，比值参数为 (a, d)"""
    a: float
    b: float
    c: float
    d: float
    x: float
    z: float
    y: float
    variant: Variant = Variant.LOWER

    def __post_init__(self):
        object.__setattr__(self, "variant", Variant.from_string(self.variant))
        if not self.a > 0:
            raise DomainError(f"F1 要求 a > 0，实际为 {self.a}")
        if not self.d > self.a:
            # Euler 积分的前置因子 B(a, d-a) 需要 d > a
            raise DomainError(f"F1 要求 d > a，实际为 a={self.a}, d={self.d}")
        check_ratio_params(self.a, self.d, self.y)
        if not max(abs(self.x), abs(self.z)) < 1:
            raise DomainError(f"F1 要求 max(|x|,|z|) < 1，实际为 x={self.x}, z={self.z}")


@dataclass(frozen=True)
class AppellF2Params:
    """F2[a,b,c;d,e;x,z;y] / F2{…} 的参数，比值参数为 (b, d) 与 (c, e)"""
    a: float
    b: float
    c: float
    d: float
    e: float
    x: float
    z: float
    y: float
    variant: Variant = Variant.LOWER

    def __post_init__(self):
        object.__setattr__(self, "variant", Variant.from_string(self.variant))
        check_ratio_params(self.b, self.d, self.y)
        check_ratio_params(self.c, self.e, self.y)
        if not abs(self.x) + abs(self.z) < 1:
            raise DomainError(f"F2 要求 |x|+|z| < 1，实际为 x={self.x}, z={self.z}")


def _log_pochhammer_prefix(lam: float, count: int) -> Tuple[np.ndarray, np.ndarray]:
    """ln|(λ)_k| 与 sign((λ)_k)，k = 0..count-1；(λ)_k 为 0 时对数为 -inf。"""
    factors = lam + np.arange(count - 1, dtype=float)
    with np.errstate(divide="ignore"):
        logs = np.concatenate(([0.0], np.cumsum(np.log(np.abs(factors)))))
    signs = np.concatenate(([1.0], np.cumprod(np.sign(factors))))
    return logs, signs


def _log_power(x: float, count: int) -> Tuple[np.ndarray, np.ndarray]:
    """ln|x|^k 与 sign(x)^k，约定 0^0 = 1。"""
    k = np.arange(count, dtype=float)
    if x == 0:
        logs = np.where(k == 0, 0.0, -np.inf)
        return logs, np.ones(count)
    return k * math.log(abs(x)), np.where((k % 2 == 1) & (x < 0), -1.0, 1.0)


def _log_ratios(b: float, d: float, y: float, variant: Variant, count: int) -> np.ndarray:
    with np.errstate(divide="ignore"):
        return np.log(ratio_sequence(b, d, y, variant, 0, count))


def _log_complete_ratios(b: float, d: float, count: int) -> np.ndarray:
    n = np.arange(count, dtype=float)
    return special.gammaln(b + n) - special.gammaln(b) - special.gammaln(d + n) + special.gammaln(d)


# 一个系数构造器返回 (diag_log, diag_sign, row_log, row_sign, col_log, col_sign)，长度均为 count
CoefficientBuilder = Callable[[int], Tuple[np.ndarray, ...]]


def _diagonal_sums(build: CoefficientBuilder, max_diagonals: int) -> Iterator[float]:
    """
    产生 S_k = diag_k · Σ_{m+n=k} row_m col_n

    所有系数以 (对数绝对值, 符号) 存放，避免阶乘与 Pochhammer 在大 k 时溢出。
    """
    capacity = 0
    arrays: Tuple[np.ndarray, ...] = ()
    k = 0
    while k < max_diagonals:
        if k >= capacity:
            capacity = min(max(_INITIAL_DIAGONALS, 2 * capacity), max_diagonals)
            arrays = build(capacity)
        diag_log, diag_sign, row_log, row_sign, col_log, col_sign = arrays
        if diag_sign[k] == 0 or diag_log[k] == -np.inf:
            yield 0.0
            k += 1
            continue
        m = np.arange(k + 1)
        exponents = diag_log[k] + row_log[m] + col_log[k - m]
        with np.errstate(over="ignore"):
            contributions = row_sign[m] * col_sign[k - m] * np.exp(exponents)
        yield float(diag_sign[k] * contributions.sum())
        k += 1


def _f1_builder(b: float, c: float, x: float, z: float,
                ratios: Callable[[int], np.ndarray]) -> CoefficientBuilder:
    def build(count: int):
        b_log, b_sign = _log_pochhammer_prefix(b, count)
        c_log, c_sign = _log_pochhammer_prefix(c, count)
        x_log, x_sign = _log_power(x, count)
        z_log, z_sign = _log_power(z, count)
        factorial = special.gammaln(np.arange(count, dtype=float) + 1.0)
        return (
            ratios(count), np.ones(count),
            b_log + x_log - factorial, b_sign * x_sign,
            c_log + z_log - factorial, c_sign * z_sign,
        )
    return build


def _f2_builder(a: float, x: float, z: float, row_ratios: Callable[[int], np.ndarray],
                col_ratios: Callable[[int], np.ndarray]) -> CoefficientBuilder:
    def build(count: int):
        a_log, a_sign = _log_pochhammer_prefix(a, count)
        x_log, x_sign = _log_power(x, count)
        z_log, z_sign = _log_power(z, count)
        factorial = special.gammaln(np.arange(count, dtype=float) + 1.0)
        return (
            a_log, a_sign,
            row_ratios(count) + x_log - factorial, x_sign,
            col_ratios(count) + z_log - factorial, z_sign,
        )
    return build


def _sum_double_series(build: CoefficientBuilder, opts: Optional[EvalOptions]) -> EvalResult:
    opts = opts if opts is not None else EvalOptions()
    return kernels.sum_series(_diagonal_sums(build, opts.max_terms), opts)


def appell_f1(p: AppellF1Params, method: Union[str, Method] = Method.SERIES,
              opts: Optional[EvalOptions] = None) -> EvalResult:
    """
    不完全 Appell F1

    级数: Σ_{m,n} [a,d;y]_{m+n} (b)_m (c)_n x^m/m! z^n/n!（上变体用 {a,d;y}）。
    积分: (1/B(a,d-a)) ∫ t^{a-1}(1-t)^{d-a-1}(1-xt)^{-b}(1-zt)^{-c} dt，区间 [0,y] 或 [y,1]。
    """
    method = Method.from_string(method)
    if method is Method.AUTO:
        method = Method.SERIES

    if method is Method.SERIES:
        build = _f1_builder(p.b, p.c, p.x, p.z, lambda count: _log_ratios(p.a, p.d, p.y, p.variant, count))
        return _sum_double_series(build, opts)

    reach = 1.0 if p.variant is Variant.UPPER else p.y
    if not (1.0 - p.x * reach > 0 and 1.0 - p.z * reach > 0):
        raise DomainError(f"F1 积分路径的被积函数在区间内奇异: x={p.x}, z={p.z}, y={p.y}")
    x, z, b, c = p.x, p.z, p.b, p.c
    return incomplete_euler_integral(
        p.a, p.d, lambda t: (1.0 - x * t) ** (-b) * (1.0 - z * t) ** (-c), p.y, p.variant, opts,
        complete_ok=max(x, z) <= _COMPLEMENT_SWITCH,
    )


def appell_f2(p: AppellF2Params, method: Union[str, Method] = Method.SERIES,
              opts: Optional[EvalOptions] = None) -> EvalResult:
    """
    不完全 Appell F2

    级数: Σ_{m,n} (a)_{m+n} [b,d;y]_m [c,e;y]_n x^m/m! z^n/n!（上变体用花括号）。
    积分: 单位正方形上的二维 Euler 积分，u 轴与 v 轴各用一套 Gauss-Jacobi 规则，
    节点数从 quad_nodes 开始逐次加倍。
    """
    method = Method.from_string(method)
    if method is Method.AUTO:
        method = Method.SERIES

    if method is Method.SERIES:
        build = _f2_builder(
            p.a, p.x, p.z,
            lambda count: _log_ratios(p.b, p.d, p.y, p.variant, count),
            lambda count: _log_ratios(p.c, p.e, p.y, p.variant, count),
        )
        return _sum_double_series(build, opts)
    return _f2_integral(p, opts)


def _f2_integral(p: AppellF2Params, opts: Optional[EvalOptions]) -> EvalResult:
    opts = opts if opts is not None else EvalOptions()
    a, b, c, d, e, x, z, y = p.a, p.b, p.c, p.d, p.e, p.x, p.z, p.y
    if p.variant is Variant.LOWER:
        if y == 0:
            return EvalResult(0.0, 0.0, 0, True)
        if not 1.0 - y * (max(x, 0.0) + max(z, 0.0)) > 0:
            raise DomainError(f"F2 积分路径的被积函数在区间内奇异: x={x}, z={z}, y={y}")
        p_u, p_v = b - 1.0, c - 1.0
        log_scale = (b + c) * math.log(y)

        def g(u, v):
            s, r = u * y, v * y
            return (1.0 - s) ** (d - b - 1.0) * (1.0 - r) ** (e - c - 1.0) * (1.0 - x * s - z * r) ** (-a)
    else:
        span = 1.0 - y
        if not 1.0 - max(x, 0.0) - max(z, 0.0) > 0:
            raise DomainError(f"F2 积分路径的被积函数在区间内奇异: x={x}, z={z}, y={y}")
        p_u, p_v = d - b - 1.0, e - c - 1.0
        log_scale = (d - b + e - c) * math.log1p(-y)

        def g(u, v):
            s, r = 1.0 - u * span, 1.0 - v * span
            return s ** (b - 1.0) * r ** (c - 1.0) * (1.0 - x * s - z * r) ** (-a)

    log_scale -= kernels.log_beta(b, d - b) + kernels.log_beta(c, e - c)
    scale = math.exp(log_scale)

    n = opts.quad_nodes
    cap = max(_F2_MAX_NODES, 4 * n)
    prev, _ = _tensor_rule(g, n, p_u, p_v)
    used = n * n
    last_err = math.inf
    while 2 * n <= cap:
        n *= 2
        cur, magnitude = _tensor_rule(g, n, p_u, p_v)
        used += n * n
        err = abs(cur - prev)
        if err <= opts.rel_tol * abs(cur) + 64 * kernels.MACHINE_EPS * magnitude:
            return EvalResult(scale * cur, scale * err, used, True)
        if err >= last_err:
            break
        last_err = err
        prev = cur

    logger.info(f"F2 二维求积在每轴 {n} 个节点时相邻差 {last_err:.3e} 未达容差，改用逐次一维求积")
    fallback = _iterated_integral(g, p_u, p_v, opts)
    return EvalResult(scale * fallback.value, scale * fallback.abs_err_est, used + fallback.effort,
                      fallback.converged)


def _tensor_rule(g, n: int, p_u: float, p_v: float) -> Tuple[float, float]:
    rule_u = kernels.gauss_jacobi_rule(n, p_u, 0.0)
    rule_v = kernels.gauss_jacobi_rule(n, p_v, 0.0)
    grid = g(rule_u.nodes[:, None], rule_v.nodes[None, :])
    return float(rule_u.weights @ grid @ rule_v.weights), float(rule_u.weights @ np.abs(grid) @ rule_v.weights)


def _iterated_integral(g, p_u: float, p_v: float, opts: EvalOptions) -> EvalResult:
    # 外层 u 用带代数权的自适应求积，内层 v 用 Gauss-Jacobi
    inner_converged = True

    def inner(u: float) -> float:
        nonlocal inner_converged
        result = kernels.jacobi_integrate(lambda v: g(u, v), p_v, 0.0, opts)
        inner_converged = inner_converged and result.converged
        return result.value

    outer = kernels.adaptive_integrate(inner, 0.0, 1.0, opts, exponent_at_lo=p_u)
    return EvalResult(outer.value, outer.abs_err_est, outer.effort, outer.converged and inner_converged)


def complete_appell_f1(a: float, b: float, c: float, d: float, x: float, z: float,
                       opts: Optional[EvalOptions] = None) -> EvalResult:
    """完全 Appell F1 = Σ (a)_{m+n}/(d)_{m+n} (b)_m (c)_n x^m/m! z^n/n!"""
    if not (a > 0 and d > 0):
        raise DomainError(f"完全 F1 要求 a, d > 0，实际为 a={a}, d={d}")
    if not max(abs(x), abs(z)) < 1:
        raise DomainError(f"F1 要求 max(|x|,|z|) < 1，实际为 x={x}, z={z}")
    build = _f1_builder(b, c, x, z, lambda count: _log_complete_ratios(a, d, count))
    return _sum_double_series(build, opts)


def complete_appell_f2(a: float, b: float, c: float, d: float, e: float, x: float, z: float,
                       opts: Optional[EvalOptions] = None) -> EvalResult:
    """完全 Appell F2 = Σ (a)_{m+n} (b)_m/(d)_m (c)_n/(e)_n x^m/m! z^n/n!"""
    if not (b > 0 and c > 0 and d > 0 and e > 0):
        raise DomainError(f"完全 F2 要求 b, c, d, e > 0，实际为 ({b}, {c}, {d}, {e})")
    if not abs(x) + abs(z) < 1:
        raise DomainError(f"F2 要求 |x|+|z| < 1，实际为 x={x}, z={z}")
    build = _f2_builder(
        a, x, z,
        lambda count: _log_complete_ratios(b, d, count),
        lambda count: _log_complete_ratios(c, e, count),
    )
    return _sum_double_series(build, opts)
