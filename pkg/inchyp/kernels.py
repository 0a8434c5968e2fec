"""
基础数值核：对数伽马、（不完全）贝塔函数、完全超几何函数、
Gauss-Jacobi 求积规则，以及带保护的幂级数求和引擎。

上层模块都在这里取数值积木；所有前置因子都在对数空间里计算。
"""

import logging
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Callable, Dict, Iterable, Optional, Tuple

import numpy as np
from scipy import integrate, linalg, special

from .config.eval_config import EvalOptions
from .exceptions import ConvergenceError, DomainError

logger = logging.getLogger(__name__)

MACHINE_EPS = float(np.finfo(float).eps)
# 逐次加倍的 Gauss-Jacobi 求积的默认节点上限
_JACOBI_MAX_NODES = 256
_ROUNDOFF_SLACK = 64 * MACHINE_EPS


@dataclass
class EvalResult:
    """一次求值的结果：值、绝对误差估计、消耗（项数或节点数）、是否收敛"""
    value: float
    abs_err_est: float = 0.0
    effort: int = 0
    converged: bool = True

    def __post_init__(self):
        if not self.abs_err_est >= 0:
            self.abs_err_est = math.inf

    def to_dict(self) -> Dict[str, Any]:
        return {
            "value": self.value,
            "abs_err_est": self.abs_err_est,
            "effort": self.effort,
            "converged": self.converged,
        }

    def require_finite(self, label: str) -> "EvalResult":
        """值溢出为 inf 或成为 nan 时没有可用的部分结果，抛出 ConvergenceError。"""
        if not math.isfinite(self.value):
            raise ConvergenceError(f"{label} 的结果不是有限数: {self.value}")
        return self


@dataclass(frozen=True)
class QuadratureRule:
    """[0,1] 上关于权 u^p (1-u)^q 的求积规则"""
    nodes: np.ndarray
    weights: np.ndarray
    exponent_at_zero: float
    exponent_at_one: float
    size: int = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "size", len(self.nodes))

    def apply(self, g: Callable[[np.ndarray], Any]) -> float:
        """计算 Σ w_i g(u_i)；g 必须接受 numpy 数组。"""
        return float(np.dot(self.weights, np.broadcast_to(g(self.nodes), self.nodes.shape)))


def _options(opts: Optional[EvalOptions]) -> EvalOptions:
    return opts if opts is not None else EvalOptions()


def is_nonpositive_integer(v: float) -> bool:
    return v <= 0 and float(v).is_integer()


def log_gamma(x: float) -> float:
    """ln Γ(x)，x > 0。"""
    if not x > 0:
        raise DomainError(f"log_gamma 要求 x > 0，实际为 {x}")
    return float(special.gammaln(x))


def log_beta(x: float, z: float) -> float:
    """ln B(x, z)，x, z > 0。"""
    if not (x > 0 and z > 0):
        raise DomainError(f"beta 要求 x > 0 且 z > 0，实际为 ({x}, {z})")
    return float(special.betaln(x, z))


def beta(x: float, z: float) -> float:
    return math.exp(log_gamma(x) + log_gamma(z) - log_gamma(x + z))


def _check_cutoff(y: float) -> None:
    if not 0 <= y < 1:
        raise DomainError(f"截断点 y 必须位于 [0, 1)，实际为 {y}")


def incomplete_beta(y: float, x: float, z: float, opts: Optional[EvalOptions] = None,
                    method: str = "auto") -> float:
    """
    不完全贝塔函数 B_y(x,z) = ∫_0^y t^{x-1}(1-t)^{z-1} dt

    y < 1 时 (1-t) 因子在积分区间上有界，所以 z 可以取任意实数。

    Args:
        y: 上限，0 <= y < 1
        x: 指数参数，x > 0
        z: 指数参数
        opts: 求值选项
        method: "auto" 在 z > 0 时用正则化不完全贝塔的库实现，否则走求积；
            "quadrature" 强制使用 t = y*u 映射后的 Gauss-Jacobi 求积

    Returns:
        B_y(x, z)
    """
    _check_cutoff(y)
    if not x > 0:
        raise DomainError(f"incomplete_beta 要求 x > 0，实际为 {x}")
    if method not in ("auto", "quadrature"):
        raise ValueError(f"不支持的方法: {method}，支持的方法: ['auto', 'quadrature']")
    if y == 0:
        return 0.0

    if method == "auto" and z > 0:
        return float(special.betainc(x, z, y)) * math.exp(log_beta(x, z))

    # t = y*u：y^x ∫_0^1 u^{x-1} (1-uy)^{z-1} du
    result = jacobi_integrate(lambda u: (1.0 - u * y) ** (z - 1.0), x - 1.0, 0.0, opts)
    if not result.converged:
        logger.warning(f"B_y({x}, {z}) 在 y={y} 处的求积未收敛，误差估计 {result.abs_err_est:.3e}")
    return y ** x * result.value


def regularized_incomplete_beta(y: float, x: float, z: float) -> float:
    """I_y(x,z) = B_y(x,z)/B(x,z)。"""
    _check_cutoff(y)
    if not (x > 0 and z > 0):
        raise DomainError(f"正则化不完全贝塔要求 x > 0 且 z > 0，实际为 ({x}, {z})")
    if y == 0:
        return 0.0
    return float(special.betainc(x, z, y))


def complementary_regularized_beta(y: float, x: float, z: float) -> float:
    """1 - I_y(x,z)，直接计算以避免 y 较小时的相消。"""
    _check_cutoff(y)
    if not (x > 0 and z > 0):
        raise DomainError(f"正则化不完全贝塔要求 x > 0 且 z > 0，实际为 ({x}, {z})")
    return float(special.betaincc(x, z, y))


def sum_series(terms: Iterable[float], opts: Optional[EvalOptions] = None) -> EvalResult:
    """
    对逐项生成的级数求和

    连续 3 项满足 |t| <= rel_tol*|S| 时停止；生成器提前结束（例如 (-n)_k 截断）
    视为有限和。达到 max_terms 时返回 converged=False 和当前部分和。

    Args:
        terms: 依次产生第 n 项的可迭代对象
        opts: 求值选项

    Returns:
        EvalResult，abs_err_est 为基于最后两项比值的几何尾部估计
    """
    opts = _options(opts)
    total = 0.0
    small = 0
    count = 0
    last = 0.0
    prev = 0.0

    for term in terms:
        total += term
        count += 1
        prev, last = last, term
        if abs(term) <= opts.rel_tol * abs(total):
            small += 1
            if small >= 3:
                return EvalResult(total, _tail_estimate(prev, last), count, True)
        else:
            small = 0
        if count >= opts.max_terms:
            tail = _tail_estimate(prev, last)
            logger.warning(f"级数在 {count} 项后仍未收敛，最后一项 {last:.3e}，部分和 {total:.6e}")
            return EvalResult(total, tail, count, False)

    return EvalResult(total, 0.0, count, True)


def _tail_estimate(prev: float, last: float) -> float:
    if last == 0.0:
        return 0.0
    if prev == 0.0:
        return abs(last)
    r = abs(last / prev)
    return abs(last) * r / (1.0 - r) if r < 1.0 else abs(last)


def complete_2f1(a: float, b: float, c: float, x: float, opts: Optional[EvalOptions] = None) -> EvalResult:
    """
    Gauss 超几何函数 ₂F₁(a,b;c;x)

    |x| < 1 时对级数求和；x = 1 时使用 Gauss 求和公式，要求 c - a - b > 0。
    """
    if is_nonpositive_integer(c):
        raise DomainError(f"₂F₁ 的 c 不能是非正整数，实际为 {c}")

    if x == 1.0:
        if not c - a - b > 0:
            raise DomainError(f"x = 1 时要求 c - a - b > 0，实际为 {c - a - b}")
        return EvalResult(gauss_summation(a, b, c), 0.0, 0, True)
    if not abs(x) < 1:
        raise DomainError(f"₂F₁ 级数要求 |x| < 1 或 x = 1，实际为 {x}")

    def terms():
        term = 1.0
        n = 0
        while True:
            yield term
            term *= (a + n) * (b + n) / ((c + n) * (n + 1)) * x
            n += 1
            if term == 0.0:
                return

    return sum_series(terms(), opts)


def gauss_summation(a: float, b: float, c: float) -> float:
    """Γ(c)Γ(c-a-b) / (Γ(c-a)Γ(c-b))，带符号。"""
    if is_nonpositive_integer(c - a) or is_nonpositive_integer(c - b):
        return 0.0
    args_num = (c, c - a - b)
    args_den = (c - a, c - b)
    log_value = sum(special.gammaln(v) for v in args_num) - sum(special.gammaln(v) for v in args_den)
    sign = np.prod([special.gammasgn(v) for v in args_num]) * np.prod([special.gammasgn(v) for v in args_den])
    return float(sign * math.exp(log_value))


def complete_1f1(a: float, b: float, x: float, opts: Optional[EvalOptions] = None) -> EvalResult:
    """
    Kummer 合流超几何函数 ₁F₁(a;b;x)

    x < 0 时先用 Kummer 变换 e^x ₁F₁(b-a;b;-x)，使级数各项同号。
    """
    if is_nonpositive_integer(b):
        raise DomainError(f"₁F₁ 的 b 不能是非正整数，实际为 {b}")
    if x < 0:
        inner = complete_1f1(b - a, b, -x, opts)
        scale = math.exp(x)
        return EvalResult(scale * inner.value, scale * inner.abs_err_est, inner.effort, inner.converged)

    def terms():
        term = 1.0
        n = 0
        while True:
            yield term
            term *= (a + n) / ((b + n) * (n + 1)) * x
            n += 1
            if term == 0.0:
                return

    return sum_series(terms(), opts)


@lru_cache(maxsize=256)
def _jacobi_nodes(n: int, p: float, q: float) -> Tuple[np.ndarray, np.ndarray]:
    # Golub-Welsch：[-1,1] 上权 (1-x)^q (1+x)^p 的 Jacobi 矩阵，u = (1+x)/2
    total = math.exp(log_beta(p + 1.0, q + 1.0))
    s = p + q
    if n == 1:
        nodes, weights = np.array([(p + 1.0) / (s + 2.0)]), np.array([total])
    else:
        k = np.arange(1, n, dtype=float)
        diag = np.empty(n)
        diag[0] = (p - q) / (s + 2.0)
        diag[1:] = (p * p - q * q) / ((2.0 * k + s) * (2.0 * k + s + 2.0))
        with np.errstate(invalid="ignore", divide="ignore"):
            off_sq = 4.0 * k * (k + p) * (k + q) * (k + s) / (
                (2.0 * k + s) ** 2 * (2.0 * k + s + 1.0) * (2.0 * k + s - 1.0))
        # k = 1 时 (k+s) 与 (2k+s-1) 相消，s = -1 时不能直接代入
        off_sq[0] = 4.0 * (1.0 + p) * (1.0 + q) / ((s + 2.0) ** 2 * (s + 3.0))
        x, vectors = linalg.eigh_tridiagonal(diag, np.sqrt(off_sq))
        nodes = (1.0 + x) / 2.0
        weights = total * vectors[0] ** 2
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights


def gauss_jacobi_rule(n: int, p: float, q: float) -> QuadratureRule:
    """
    [0,1] 上关于权 u^p (1-u)^q 的 n 点 Gauss-Jacobi 规则，对次数 <= 2n-1 的多项式精确。

    Args:
        n: 节点数，n >= 1
        p: u = 0 处的指数，p > -1
        q: u = 1 处的指数，q > -1
    """
    if n < 1:
        raise DomainError(f"节点数必须 >= 1，实际为 {n}")
    if not (p > -1 and q > -1):
        raise DomainError(f"端点指数必须 > -1，实际为 p={p}, q={q}")
    nodes, weights = _jacobi_nodes(int(n), float(p), float(q))
    return QuadratureRule(nodes, weights, float(p), float(q))


def jacobi_integrate(g: Callable[[np.ndarray], Any], p: float, q: float,
                     opts: Optional[EvalOptions] = None) -> EvalResult:
    """
    逐次加倍节点计算 ∫_0^1 u^p (1-u)^q g(u) du

    从 quad_nodes 开始，直到相邻两次结果之差不超过 rel_tol*|值| 加上舍入余量；
    节点数上限为 max(256, 4*quad_nodes)。相邻差不再缩小或到达上限时改用带代数权的自适应求积。
    """
    opts = _options(opts)
    n = opts.quad_nodes
    cap = max(_JACOBI_MAX_NODES, 4 * n)
    prev, _ = _apply_rule(gauss_jacobi_rule(n, p, q), g)
    used = n
    last_err = math.inf

    while 2 * n <= cap:
        n *= 2
        cur, magnitude = _apply_rule(gauss_jacobi_rule(n, p, q), g)
        used += n
        err = abs(cur - prev)
        if err <= opts.rel_tol * abs(cur) + _ROUNDOFF_SLACK * magnitude:
            return EvalResult(cur, err, used, True)
        if err >= last_err:
            break
        last_err = err
        prev = cur

    logger.info(f"Gauss-Jacobi 求积在 {n} 个节点时相邻差 {last_err:.3e} 未达容差 (p={p}, q={q})，改用自适应求积")
    fallback = adaptive_integrate(lambda u: float(g(np.float64(u))), 0.0, 1.0, opts,
                                  exponent_at_lo=p, exponent_at_hi=q)
    return EvalResult(fallback.value, fallback.abs_err_est, used + fallback.effort, fallback.converged)


def _apply_rule(rule: QuadratureRule, g: Callable[[np.ndarray], Any]) -> Tuple[float, float]:
    values = np.broadcast_to(g(rule.nodes), rule.nodes.shape)
    return float(np.dot(rule.weights, values)), float(np.dot(rule.weights, np.abs(values)))


def adaptive_integrate(f: Callable[[float], float], lo: float, hi: float,
                       opts: Optional[EvalOptions] = None,
                       exponent_at_lo: Optional[float] = None,
                       exponent_at_hi: Optional[float] = None) -> EvalResult:
    """
    自适应求积 ∫_lo^hi f(t) dt

    给出端点指数时改为计算 ∫ f(t) (t-lo)^α (hi-t)^β dt（QUADPACK 的代数权）。
    细分预算由 adaptive_max_depth 决定；未达到容差时 converged=False。
    """
    opts = _options(opts)
    if not lo < hi:
        raise DomainError(f"积分区间要求 lo < hi，实际为 [{lo}, {hi}]")

    kwargs: Dict[str, Any] = {}
    if exponent_at_lo is not None or exponent_at_hi is not None:
        kwargs["weight"] = "alg"
        kwargs["wvar"] = (exponent_at_lo or 0.0, exponent_at_hi or 0.0)

    out = integrate.quad(
        f, lo, hi,
        epsabs=0.0,
        epsrel=max(opts.rel_tol, 50 * MACHINE_EPS),
        limit=10 * opts.adaptive_max_depth,
        full_output=1,
        **kwargs,
    )
    value, abs_err, info = out[0], out[1], out[2]
    converged = len(out) == 3
    if not converged:
        logger.warning(f"自适应求积在 [{lo}, {hi}] 上未收敛: {out[3]}")
    return EvalResult(float(value), float(abs_err), int(info.get("neval", 0)), converged)


def _central_difference(g: Callable[[float], float], y: float, n: int, h: float) -> float:
    total = 0.0
    for k in range(n + 1):
        total += (-1) ** k * math.comb(n, k) * g(y + (n / 2 - k) * h)
    return total / h ** n


def richardson_derivative(g: Callable[[float], float], y: float, n: int, h: float) -> float:
    """
    n 阶导数：步长 h 与 h/2 的中心差分做一次 Richardson 外推，截断误差 O(h^4)

    模板覆盖 [y - n*h/2, y + n*h/2]，调用方负责保证 g 在其上有定义。
    """
    coarse = _central_difference(g, y, n, h)
    fine = _central_difference(g, y, n, h / 2)
    result = (4.0 * fine - coarse) / 3.0

    roundoff = MACHINE_EPS * abs(g(y)) * 2 ** n / (h / 2) ** n
    if roundoff > 1e-7 * max(abs(result), 1e-300):
        logger.warning(f"有限差分步长 h={h} 过小，n={n} 阶导数的舍入误差估计 {roundoff:.3e} 相对 {result:.3e} 过大")
    return result
