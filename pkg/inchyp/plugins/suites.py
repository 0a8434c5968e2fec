"""
恒等式验证套件

每个套件插件接受 (rng, grid_size, opts)，返回 SuiteCase 列表。网格只由 rng 决定，
求值在 SuiteCase.run 中延迟进行，便于管理器并发执行。
"""

import math
from dataclasses import replace
from typing import List

import numpy as np

from ..config.eval_config import EvalOptions
from .. import kernels
from ..appell import AppellF1Params, AppellF2Params, appell_f1, appell_f2
from ..fracderiv import (
    ClosedFormKind,
    ClosedFormSpec,
    FracOpSpec,
    classical_fracderiv,
    closed_form_sides,
    ifrac,
    ifrac_power,
)
from ..generating import GenRelKind, GenRelSpec, genrel_bilinear_residual, genrel_linear_residual
from ..hypergeometric import (
    FunctionKind,
    Hyp1F1Params,
    Hyp2F1Params,
    Method,
    MomentKind,
    TransformKind,
    derivative_shift,
    difference_relation_residual,
    evaluate,
    ihyp_1f1,
    ihyp_2f1,
    ihyp_2f1_at_one,
    ihyp_2f1_at_one_quadrature,
    transform,
    transform_round_trip,
    y_moment_residual,
)
from ..pochhammer import (
    RatioSpec,
    Variant,
    complete_ratio,
    decomposition_residual,
    derivative_identity_residual,
    ratio,
    ratio_sequence,
    ratio_via_2f1,
)
from ..suite_manager import SuiteCase

_TINY = 1e-300
_VARIANTS = (Variant.LOWER, Variant.UPPER)


def _relative(value: float, reference: float, *others: float) -> float:
    """|value - reference| / max(|value|, |reference|, |others|...)"""
    scale = max(abs(value), abs(reference), *(abs(o) for o in others), _TINY)
    return abs(value - reference) / scale


def _signed(rng: np.random.Generator, lo: float, hi: float) -> float:
    """绝对值在 [lo, hi) 内、符号随机的数"""
    return float(rng.choice((-1.0, 1.0)) * rng.uniform(lo, hi))


def beta_decomposition(rng: np.random.Generator, grid_size: int, opts: EvalOptions) -> List[SuiteCase]:
    """B_y(x,z) + B_{1-y}(z,x) = B(x,z)"""
    cases = []
    for _ in range(grid_size):
        x, z = rng.uniform(0.2, 5.0, size=2)
        y = rng.uniform(0.01, 0.99)

        def run(x=x, z=z, y=y):
            whole = kernels.beta(x, z)
            parts = kernels.incomplete_beta(y, x, z, opts) + kernels.incomplete_beta(1.0 - y, z, x, opts)
            return abs(parts - whole) / whole

        cases.append(SuiteCase(f"x={x:.6g}, z={z:.6g}, y={y:.6g}", run))
    return cases


def beta_2f1(rng: np.random.Generator, grid_size: int, opts: EvalOptions) -> List[SuiteCase]:
    """B_y(x,z) = (y^x/x)(1-y)^z ₂F₁(1, x+z; 1+x; y)，固定网格"""
    cases = []
    for x in (0.5, 1.0, 2.5):
        for z in (0.5, 1.0, 2.5):
            for y in (0.1, 0.5, 0.9):
                def run(x=x, z=z, y=y):
                    direct = kernels.incomplete_beta(y, x, z, opts)
                    series = y ** x / x * (1.0 - y) ** z * kernels.complete_2f1(1.0, x + z, 1.0 + x, y, opts).value
                    return _relative(direct, series)

                cases.append(SuiteCase(f"x={x}, z={z}, y={y}", run))
    return cases


def ratio_decomposition(rng: np.random.Generator, grid_size: int, opts: EvalOptions) -> List[SuiteCase]:
    """[b,c;y]_n + {b,c;y}_n = (b)_n/(c)_n"""
    cases = []
    for _ in range(grid_size):
        b = rng.uniform(0.2, 4.0)
        c = b + rng.uniform(0.2, 4.0)
        n = int(rng.integers(0, 21))
        y = rng.uniform(0.0, 0.99)

        def run(b=b, c=c, n=n, y=y):
            return abs(decomposition_residual(b, c, n, y)) / complete_ratio(b, c, n)

        cases.append(SuiteCase(f"b={b:.6g}, c={c:.6g}, n={n}, y={y:.6g}", run))
    return cases


def ratio_paths(rng: np.random.Generator, grid_size: int, opts: EvalOptions) -> List[SuiteCase]:
    """不完全贝塔比值与 ₂F₁ 闭式两条路径一致"""
    cases = []
    for i in range(grid_size):
        b = rng.uniform(0.2, 4.0)
        c = b + rng.uniform(0.2, 4.0)
        n = int(rng.integers(0, 21))
        y = rng.uniform(0.05, 0.9)
        spec = RatioSpec(b, c, n, y, _VARIANTS[i % 2])

        def run(spec=spec):
            return _relative(ratio(spec, opts).value, ratio_via_2f1(spec, opts).value)

        cases.append(SuiteCase(str(spec), run))
    return cases


def _random_2f1(rng: np.random.Generator, variant: Variant, x_max: float = 0.8) -> Hyp2F1Params:
    b = rng.uniform(0.2, 3.0)
    return Hyp2F1Params(
        a=rng.uniform(-2.0, 3.0),
        b=b,
        c=b + rng.uniform(0.2, 3.0),
        y=rng.uniform(0.1, 0.9),
        x=rng.uniform(-x_max, x_max),
        variant=variant,
    )


def _random_1f1(rng: np.random.Generator, variant: Variant, x_max: float = 5.0) -> Hyp1F1Params:
    a = rng.uniform(0.2, 3.0)
    return Hyp1F1Params(
        a=a,
        b=a + rng.uniform(0.2, 3.0),
        y=rng.uniform(0.1, 0.9),
        x=rng.uniform(-x_max, x_max),
        variant=variant,
    )


def decomposition_2f1(rng: np.random.Generator, grid_size: int, opts: EvalOptions) -> List[SuiteCase]:
    """₂F₁(a,[b,c;y];x) + ₂F₁(a,{b,c;y};x) = ₂F₁(a,b;c;x)"""
    cases = []
    for _ in range(grid_size):
        p = _random_2f1(rng, Variant.LOWER)

        def run(p=p):
            lower = ihyp_2f1(p, Method.AUTO, opts).value
            upper = ihyp_2f1(Hyp2F1Params(p.a, p.b, p.c, p.y, p.x, Variant.UPPER), Method.AUTO, opts).value
            whole = kernels.complete_2f1(p.a, p.b, p.c, p.x, opts).value
            return _relative(lower + upper, whole, lower, upper)

        cases.append(SuiteCase(str(p), run))
    return cases


def decomposition_1f1(rng: np.random.Generator, grid_size: int, opts: EvalOptions) -> List[SuiteCase]:
    """₁F₁([a,b;y];x) + ₁F₁({a,b;y};x) = ₁F₁(a;b;x)"""
    cases = []
    for _ in range(grid_size):
        p = _random_1f1(rng, Variant.LOWER)

        def run(p=p):
            lower = ihyp_1f1(p, Method.AUTO, opts).value
            upper = ihyp_1f1(Hyp1F1Params(p.a, p.b, p.y, p.x, Variant.UPPER), Method.AUTO, opts).value
            whole = kernels.complete_1f1(p.a, p.b, p.x, opts).value
            return _relative(lower + upper, whole, lower, upper)

        cases.append(SuiteCase(str(p), run))
    return cases


def dual_path(rng: np.random.Generator, grid_size: int, opts: EvalOptions) -> List[SuiteCase]:
    """级数路径与 Euler 积分路径一致"""
    cases = []
    for i in range(grid_size):
        variant = _VARIANTS[i % 2]
        p = _random_2f1(rng, variant) if (i // 2) % 2 == 0 else _random_1f1(rng, variant, x_max=3.0)

        def run(p=p):
            series = evaluate(p, Method.SERIES, opts).value
            integral = evaluate(p, Method.INTEGRAL, opts).value
            return _relative(series, integral)

        cases.append(SuiteCase(str(p), run))
    return cases


def closed_values(rng: np.random.Generator, grid_size: int, opts: EvalOptions) -> List[SuiteCase]:
    """₂F₁(1,[1,2;y];x) = -ln(1-xy)/x 与 ₁F₁([1,2;y];x) = (e^{xy}-1)/x"""
    cases = []
    for i in range(grid_size):
        y = rng.uniform(0.05, 0.95)
        if i % 2 == 0:
            x = _signed(rng, 0.05, 0.9)

            def run(x=x, y=y):
                value = ihyp_2f1(Hyp2F1Params(1.0, 1.0, 2.0, y, x), Method.AUTO, opts).value
                return _relative(value, -math.log1p(-x * y) / x)

            cases.append(SuiteCase(f"2f1 x={x:.6g}, y={y:.6g}", run))
        else:
            x = _signed(rng, 0.05, 5.0)

            def run(x=x, y=y):
                value = ihyp_1f1(Hyp1F1Params(1.0, 2.0, y, x), Method.AUTO, opts).value
                return _relative(value, math.expm1(x * y) / x)

            cases.append(SuiteCase(f"1f1 x={x:.6g}, y={y:.6g}", run))
    return cases


def gauss_value(rng: np.random.Generator, grid_size: int, opts: EvalOptions) -> List[SuiteCase]:
    """x = 1 的闭式值与 Euler 积分直接求积一致；(a,b,c) = (1,1,3) 时下变体恰为 2y"""
    cases = []
    for i in range(grid_size):
        variant = _VARIANTS[i % 2]
        a = rng.uniform(-1.0, 1.5)
        b = rng.uniform(0.2, 2.0)
        c = max(a + b, b) + rng.uniform(0.3, 2.0)
        y = rng.uniform(0.05, 0.95)

        def run(variant=variant, a=a, b=b, c=c, y=y):
            closed = ihyp_2f1_at_one(variant, a, b, c, y, opts).value
            return _relative(closed, ihyp_2f1_at_one_quadrature(variant, a, b, c, y, opts))

        cases.append(SuiteCase(f"{variant.value} a={a:.6g}, b={b:.6g}, c={c:.6g}, y={y:.6g}", run))

    for y in (0.1, 0.5, 0.9):
        def run(y=y):
            return _relative(ihyp_2f1_at_one(Variant.LOWER, 1.0, 1.0, 3.0, y, opts).value, 2.0 * y)

        cases.append(SuiteCase(f"lower a=1, b=1, c=3, y={y}", run))
    return cases


def transforms(rng: np.random.Generator, grid_size: int, opts: EvalOptions) -> List[SuiteCase]:
    """Pfaff 型与 Kummer 型变换的两端一致，以及往返不变"""
    kinds = list(TransformKind)
    cases = []
    for i in range(grid_size):
        kind = kinds[i % len(kinds)]
        if kind.confluent:
            params = _random_1f1(rng, kind.lhs_variant, x_max=3.0)
        else:
            params = _random_2f1(rng, kind.lhs_variant)

        def run(kind=kind, params=params):
            lhs = evaluate(params, Method.AUTO, opts).value
            return _relative(lhs, transform(kind, params, opts).value)

        cases.append(SuiteCase(f"{kind.value} {params}", run))

        def round_trip(params=params):
            original, returned = transform_round_trip(params, opts)
            return _relative(original, returned)

        cases.append(SuiteCase(f"round-trip {params}", round_trip))
    return cases


def derivative_ratio(rng: np.random.Generator, grid_size: int, opts: EvalOptions) -> List[SuiteCase]:
    """比值的 n 阶 y 导数表示（n = 1, 2），有限差分残差"""
    cases = []
    for i in range(grid_size):
        variant = _VARIANTS[i % 2]
        n = 1 + (i // 2) % 2
        b = rng.uniform(0.5, 2.0)
        c = b + n + rng.uniform(0.5, 3.0)
        y = rng.uniform(0.2, 0.8)
        spec = RatioSpec(b, c, n, y, variant)
        h = 1e-3 if n == 1 else 1e-2

        def run(spec=spec, h=h):
            return derivative_identity_residual(spec, h)

        cases.append(SuiteCase(str(spec), run))
    return cases


def derivative_shift_suite(rng: np.random.Generator, grid_size: int, opts: EvalOptions) -> List[SuiteCase]:
    """x 导数公式：中心差分与参数上移后的函数一致"""
    cases = []
    for i in range(grid_size):
        variant = _VARIANTS[i % 2]
        n = 1 + (i // 2) % 2
        h = 1e-3 if n == 1 else 1e-2
        if (i // 4) % 2 == 0:
            kind = FunctionKind.TWO_F1
            params = _random_2f1(rng, variant, x_max=0.5)
        else:
            kind = FunctionKind.ONE_F1
            params = _random_1f1(rng, variant, x_max=2.0)

        def run(kind=kind, params=params, n=n, h=h):
            def g(x):
                return evaluate(replace(params, x=x), Method.AUTO, opts).value

            numeric = kernels.richardson_derivative(g, params.x, n, h)
            coefficient, shifted = derivative_shift(kind, params, n)
            return _relative(numeric, coefficient * evaluate(shifted, Method.AUTO, opts).value, g(params.x))

        cases.append(SuiteCase(f"{kind.value} n={n} {params}", run))
    return cases


def y_moments(rng: np.random.Generator, grid_size: int, opts: EvalOptions) -> List[SuiteCase]:
    """对截断点 y 积分的关系；含 (a,b,c,k,x) = (1,1,2,1,0.5) 的解析情形"""
    plan = [(MomentKind.POWER, 1), (MomentKind.POWER, 2), (MomentKind.POWER_UNIT, 1),
            (MomentKind.COMPLEMENT, 1), (MomentKind.COMPLEMENT, 2), (MomentKind.MEAN, 1)]
    cases = []
    for i in range(grid_size):
        kind, k = plan[i % len(plan)]
        a = rng.uniform(0.5, 2.0)
        b = rng.uniform(0.5, 2.0)
        c = b + k + rng.uniform(0.5, 2.0)
        x = rng.uniform(-0.5, 0.5)

        def run(kind=kind, k=k, a=a, b=b, c=c, x=x):
            return abs(y_moment_residual(kind, k, a, b, c, x, opts))

        cases.append(SuiteCase(f"{kind.value} k={k}, a={a:.6g}, b={b:.6g}, c={c:.6g}, x={x:.6g}", run))

    def analytic():
        return abs(y_moment_residual(MomentKind.COMPLEMENT, 1, 1.0, 1.0, 2.0, 0.5, opts))

    cases.append(SuiteCase("complement k=1, a=1, b=1, c=2, x=0.5", analytic))
    return cases


def _random_f1(rng: np.random.Generator, variant: Variant) -> AppellF1Params:
    a = rng.uniform(0.3, 2.0)
    return AppellF1Params(
        a=a,
        b=rng.uniform(-1.0, 2.0),
        c=rng.uniform(-1.0, 2.0),
        d=a + rng.uniform(0.3, 2.0),
        x=rng.uniform(-0.6, 0.6),
        z=rng.uniform(-0.6, 0.6),
        y=rng.uniform(0.1, 0.9),
        variant=variant,
    )


def _random_f2(rng: np.random.Generator, variant: Variant) -> AppellF2Params:
    b, c = rng.uniform(0.3, 2.0, size=2)
    return AppellF2Params(
        a=rng.uniform(-1.0, 2.0),
        b=b,
        c=c,
        d=b + rng.uniform(0.3, 2.0),
        e=c + rng.uniform(0.3, 2.0),
        x=rng.uniform(-0.3, 0.3),
        z=rng.uniform(-0.3, 0.3),
        y=rng.uniform(0.1, 0.9),
        variant=variant,
    )


def appell(rng: np.random.Generator, grid_size: int, opts: EvalOptions) -> List[SuiteCase]:
    """F1/F2 级数与积分一致，以及 z = 0、x = z 的约化"""
    cases = []
    for i in range(grid_size):
        variant = _VARIANTS[i % 2]
        f1 = _random_f1(rng, variant)
        f2 = _random_f2(rng, variant)

        def f1_paths(p=f1):
            return _relative(appell_f1(p, Method.SERIES, opts).value, appell_f1(p, Method.INTEGRAL, opts).value)

        def f2_paths(p=f2):
            return _relative(appell_f2(p, Method.SERIES, opts).value, appell_f2(p, Method.INTEGRAL, opts).value)

        def f1_z_zero(p=f1):
            reduced = AppellF1Params(p.a, p.b, p.c, p.d, p.x, 0.0, p.y, p.variant)
            target = ihyp_2f1(Hyp2F1Params(p.b, p.a, p.d, p.y, p.x, p.variant), Method.AUTO, opts).value
            return _relative(appell_f1(reduced, Method.SERIES, opts).value, target)

        def f1_diagonal(p=f1):
            reduced = AppellF1Params(p.a, p.b, p.c, p.d, p.x, p.x, p.y, p.variant)
            target = ihyp_2f1(Hyp2F1Params(p.b + p.c, p.a, p.d, p.y, p.x, p.variant), Method.AUTO, opts).value
            return _relative(appell_f1(reduced, Method.SERIES, opts).value, target)

        def f2_z_zero(p=f2):
            reduced = AppellF2Params(p.a, p.b, p.c, p.d, p.e, p.x, 0.0, p.y, p.variant)
            mass = float(ratio_sequence(p.c, p.e, p.y, p.variant, 0, 1)[0])
            target = mass * ihyp_2f1(Hyp2F1Params(p.a, p.b, p.d, p.y, p.x, p.variant), Method.AUTO, opts).value
            return _relative(appell_f2(reduced, Method.SERIES, opts).value, target)

        cases.append(SuiteCase(f"F1 paths {f1}", f1_paths))
        cases.append(SuiteCase(f"F2 paths {f2}", f2_paths))
        cases.append(SuiteCase(f"F1 z=0 {f1}", f1_z_zero))
        cases.append(SuiteCase(f"F1 x=z {f1}", f1_diagonal))
        cases.append(SuiteCase(f"F2 z=0 {f2}", f2_z_zero))
    return cases


def _polynomial(t: float) -> float:
    return 1.0 + 2.0 * t - t * t + 0.5 * t ** 3


def fracderiv(rng: np.random.Generator, grid_size: int, opts: EvalOptions) -> List[SuiteCase]:
    """幂函数闭式与数值算子一致；下算子 + 上算子 = 经典算子"""
    powers = (0.0, 0.5, 1.0, 2.3)
    cases = []
    for i in range(grid_size):
        lam = powers[i % len(powers)]
        variant = _VARIANTS[(i // len(powers)) % 2]
        spec = FracOpSpec(rng.uniform(-2.0, -0.2), rng.uniform(0.0, 0.95), rng.uniform(0.2, 3.0), variant)

        def power_rule(lam=lam, spec=spec):
            numeric = ifrac(lambda t: t ** lam, spec, opts).value
            return _relative(numeric, ifrac_power(spec.variant, lam, spec).value)

        def split(spec=spec):
            lower = ifrac(_polynomial, FracOpSpec(spec.mu, spec.y, spec.z, Variant.LOWER), opts).value
            upper = ifrac(_polynomial, FracOpSpec(spec.mu, spec.y, spec.z, Variant.UPPER), opts).value
            return _relative(lower + upper, classical_fracderiv(_polynomial, spec.mu, spec.z, opts).value)

        cases.append(SuiteCase(f"power lambda={lam} {spec}", power_rule))
        cases.append(SuiteCase(f"split {spec}", split))
    return cases


def closed_forms(rng: np.random.Generator, grid_size: int, opts: EvalOptions) -> List[SuiteCase]:
    """算子作用于 t^{λ-1}(1-t)^{-α} 等函数得到不完全 ₂F₁、F1、F2"""
    kinds = list(ClosedFormKind)
    cases = []
    for i in range(grid_size):
        kind = kinds[i % len(kinds)]
        variant = _VARIANTS[(i // len(kinds)) % 2]
        lam = rng.uniform(1.0, 2.0)
        beta = rng.uniform(0.3, 1.0)
        spec = ClosedFormSpec(
            lam=lam,
            mu=lam + rng.uniform(0.5, 2.0),
            alpha=rng.uniform(0.3, 1.5),
            y=rng.uniform(0.1, 0.9),
            z=rng.uniform(0.1, 0.5),
            beta=beta,
            gamma=beta + rng.uniform(0.5, 2.0),
            a=rng.uniform(0.1, 0.5),
            b=rng.uniform(0.1, 0.5),
            t=rng.uniform(0.05, 0.2),
        )

        def run(kind=kind, variant=variant, spec=spec):
            lhs, rhs = closed_form_sides(kind, variant, spec, opts)
            return _relative(lhs, rhs)

        cases.append(SuiteCase(f"{kind.value} {variant.value} {spec}", run))
    return cases


def generating(rng: np.random.Generator, grid_size: int, opts: EvalOptions) -> List[SuiteCase]:
    """
    线性与双线性生成关系；用例残差是超出截断尾项上界的部分，
    即 max(|截断左端 - 右端| - 尾项上界, 0)
    """
    relations = ("shift", "negshift", "bilinear")
    cases = []
    for i in range(grid_size):
        relation = relations[i % len(relations)]
        variant = _VARIANTS[(i // len(relations)) % 2]
        alpha = rng.uniform(0.5, 2.0)
        gamma = rng.uniform(0.5, 2.0)
        bilinear = relation == "bilinear"
        reach = 0.4 if bilinear else 0.5
        spec = GenRelSpec(
            lam=rng.uniform(0.5, 2.0),
            alpha=alpha,
            beta=alpha + rng.uniform(0.5, 2.0),
            y=rng.uniform(0.1, 0.9),
            z=rng.uniform(-reach, reach),
            t=rng.uniform(-0.1, 0.1) if bilinear else rng.uniform(-0.2, 0.2),
            rho=rng.uniform(0.5, 3.0),
            gamma=gamma,
            delta=gamma + rng.uniform(0.5, 2.0),
            x=rng.uniform(-0.4, 0.4),
        )

        def run(relation=relation, variant=variant, spec=spec):
            if relation == "bilinear":
                residual, tail = genrel_bilinear_residual(variant, spec, opts)
            else:
                residual, tail = genrel_linear_residual(GenRelKind(relation), variant, spec, opts)
            return max(residual - tail, 0.0)

        cases.append(SuiteCase(f"{relation} {variant.value} {spec}", run))
    return cases


def difference_relation(rng: np.random.Generator, grid_size: int, opts: EvalOptions) -> List[SuiteCase]:
    """差分关系的相对残差，只报告"""
    cases = []
    for _ in range(grid_size):
        a = rng.uniform(-1.0, 2.0)
        b = rng.uniform(1.1, 3.0)
        h = rng.uniform(1.1, 3.0)
        y = rng.uniform(0.1, 0.9)
        x = rng.uniform(-0.8, 0.8)

        def run(a=a, b=b, h=h, y=y, x=x):
            lhs = (b + h - 1.0) / kernels.beta(b, h) * y ** (b - 1.0) * (1.0 - y) ** (h - 1.0) * (1.0 - x * y) ** (-a)
            return abs(difference_relation_residual(a, b, h, y, x, opts)) / max(abs(lhs), _TINY)

        cases.append(SuiteCase(f"a={a:.6g}, b={b:.6g}, h={h:.6g}, y={y:.6g}, x={x:.6g}", run))
    return cases
