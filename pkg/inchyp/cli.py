"""
inchyp 命令行入口

用法:
    inchyp eval 2f1 --variant lower --a 1 --b 1 --c 2 --y 0.5 --x 0.5
    inchyp table ratio --b 1 --c 2 --n 2 --sweep y:0:0.5:2
    inchyp verify decomposition-2f1 --seed 7
    inchyp fracderiv --family power --lambda 1 --mu -1 --y 0.5 --z 2
    inchyp list

退出码: 0 成功；1 验证未通过；2 参数或定义域错误、未知的函数或套件；3 未收敛。
"""

import json
import logging
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Optional

import click
from pydantic import ValidationError

from .config.eval_config import EvalOptions, RuntimeConfig
from .config.loader import load_eval_options
from .exceptions import ConvergenceError
from .fracderiv import FracOpSpec, FunctionFamily, classical_fracderiv, ifrac
from .function_manager import FunctionManager
from .kernels import EvalResult
from .logging_utils import setup_logging
from .suite_manager import SuiteManager
from .table import OutputFormat, SweepAxis, TableRequest, generate_rows, write_rows

logger = logging.getLogger(__name__)

EXIT_FAILED = 1
EXIT_DOMAIN = 2
EXIT_NOT_CONVERGED = 3

_EXTRA_ARGS = {"ignore_unknown_options": True, "allow_extra_args": True}


@dataclass
class CliState:
    runtime: RuntimeConfig
    opts: EvalOptions

    def functions(self) -> FunctionManager:
        return FunctionManager(self.runtime.config_dir / "functions")

    def suites(self) -> SuiteManager:
        return SuiteManager(self.runtime.config_dir / "suites", self.runtime.threads)


def _fail(message: str, code: int) -> None:
    click.echo(f"错误: {message}", err=True)
    sys.exit(code)


def _parse_extra_args(args: List[str]) -> Dict[str, str]:
    """把 ['--a', '1', '--x=0.5'] 解析成 {'a': '1', 'x': '0.5'}；值可以以 '-' 开头。"""
    params: Dict[str, str] = {}
    i = 0
    while i < len(args):
        token = args[i]
        if not token.startswith("--") or len(token) == 2:
            raise ValueError(f"无法解析的参数: '{token}'，参数应写成 --name value")
        name = token[2:]
        if "=" in name:
            name, value = name.split("=", 1)
            i += 1
        else:
            if i + 1 >= len(args):
                raise ValueError(f"参数 '--{name}' 缺少取值")
            value = args[i + 1]
            i += 2
        if name in params:
            raise ValueError(f"参数 '--{name}' 重复给出")
        params[name] = value
    return params


def _emit_result(result: EvalResult) -> None:
    click.echo(json.dumps(result.to_dict()))
    if not result.converged:
        _fail(f"求值未收敛，误差估计 {result.abs_err_est:.3e}", EXIT_NOT_CONVERGED)


@click.group()
@click.option("--tol", type=float, default=None, help="相对容差 rel_tol")
@click.option("--max-terms", type=int, default=None, help="级数最多累加的项数")
@click.option("--quad-nodes", type=int, default=None, help="Gauss-Jacobi 初始节点数")
@click.option("--log-level", default="WARNING", show_default=True, help="日志级别，日志写到标准错误")
@click.version_option(package_name="inchyp", prog_name="inchyp")
@click.pass_context
def cli(ctx: click.Context, tol: Optional[float], max_terms: Optional[int], quad_nodes: Optional[int],
        log_level: str):
    """
    不完全超几何函数工具：求值、网格表与恒等式验证。
    """
    try:
        setup_logging(log_level)
        runtime = RuntimeConfig()
        defaults = load_eval_options(runtime.config_dir / "eval" / "default.yaml")
        opts = defaults.with_overrides(rel_tol=tol, max_terms=max_terms, quad_nodes=quad_nodes)
    except (ValueError, ValidationError) as e:
        _fail(str(e), EXIT_DOMAIN)
    logger.info(f"运行时配置: {runtime}，求值选项: {opts}")
    ctx.obj = CliState(runtime, opts)


@cli.command("eval", context_settings=_EXTRA_ARGS)
@click.argument("function_id")
@click.pass_context
def eval_command(ctx: click.Context, function_id: str):
    """
    对一个函数求值，参数写成 --name value，结果以 JSON 输出。

    Examples:

        inchyp eval ratio --variant lower --b 1 --c 2 --n 2 --y 0.5

        inchyp eval fracderiv-power --lambda 1 --mu -1 --y 0.5 --z 2
    """
    state: CliState = ctx.obj
    try:
        manager = state.functions()
        params = manager.coerce_params(function_id, _parse_extra_args(ctx.args))
        result = manager.run_function(function_id, params, state.opts)
    except ConvergenceError as e:
        _fail(str(e), EXIT_NOT_CONVERGED)
    except (ValueError, ValidationError, ArithmeticError) as e:
        _fail(str(e), EXIT_DOMAIN)
    _emit_result(result)


@cli.command("table", context_settings=_EXTRA_ARGS)
@click.argument("function_id")
@click.option("--sweep", "sweeps", multiple=True, help="扫描轴 name:start:stop:steps，可重复")
@click.option("--format", "fmt", type=click.Choice([f.value for f in OutputFormat]), default="csv",
              show_default=True, help="输出格式")
@click.option("--output", "-o", type=click.Path(dir_okay=False, path_type=Path), default=None,
              help="输出文件，缺省为标准输出")
@click.pass_context
def table_command(ctx: click.Context, function_id: str, sweeps: List[str], fmt: str, output: Optional[Path]):
    """
    在参数网格上求值，每个网格点一行；失败的点记在 error 列。

    Examples:

        inchyp table ratio --b 1 --c 2 --n 2 --sweep y:0:0.5:2

        inchyp table 2f1 --a 1 --b 1 --c 2 --y 0.5 --sweep x:-0.5:0.5:3 --format json
    """
    state: CliState = ctx.obj
    try:
        manager = state.functions()
        request = TableRequest(
            function_id=function_id,
            params=_parse_extra_args(ctx.args),
            sweeps=[SweepAxis.from_string(s) for s in sweeps],
            fmt=OutputFormat.from_string(fmt),
        )
        rows = generate_rows(manager, request, state.opts, state.runtime.threads)
    except (ValueError, ValidationError) as e:
        _fail(str(e), EXIT_DOMAIN)

    names = [axis.name for axis in request.sweeps]
    if output is not None:
        with open(output, "w", encoding="utf-8", newline="") as f:
            write_rows(rows, names, request.fmt, f)
    else:
        write_rows(rows, names, request.fmt, click.get_text_stream("stdout"))

    if rows and all(row["error"] for row in rows):
        _fail(f"全部 {len(rows)} 个网格点求值失败", EXIT_DOMAIN)


@cli.command("verify")
@click.argument("suite", default="all")
@click.option("--tol", type=float, default=None, help="覆盖套件配置的通过阈值")
@click.option("--seed", type=int, default=0, show_default=True, help="随机网格种子")
@click.option("--strict", is_flag=True, help="只报告的套件也计入结果；verify all 时跳过它们")
@click.option("--timing", is_flag=True, help="报告中加入 wall_time")
@click.pass_context
def verify_command(ctx: click.Context, suite: str, tol: Optional[float], seed: int, strict: bool, timing: bool):
    """
    运行一个验证套件（或 all），每个套件输出一行 JSON 报告。

    Examples:

        inchyp verify decomposition-2f1

        inchyp verify all --seed 42 --strict
    """
    state: CliState = ctx.obj
    manager = state.suites()
    if suite == "all":
        names = manager.list_suites()
        if strict:
            names = [name for name in names if not manager.get_suite_config(name).report_only]
    elif suite in manager.list_suites():
        names = [suite]
    else:
        _fail(f"未知的套件 '{suite}'，可用的套件: {manager.list_suites()}", EXIT_DOMAIN)

    failed = []
    for name in names:
        report = manager.run_suite(name, state.opts, seed=seed, tolerance=tol, timing=timing)
        click.echo(json.dumps(report.to_dict()))
        counts = strict or not report.report_only
        if counts and not report.passed:
            failed.append(name)

    if failed:
        _fail(f"未通过的套件: {failed}", EXIT_FAILED)


@cli.command("fracderiv")
@click.option("--family", type=click.Choice([f.value for f in FunctionFamily]), default="power",
              show_default=True, help="内置函数族: power t^λ, binomial t^{λ-1}(1-t)^{-α}, exp e^{αt}")
@click.option("--operator", "operator", type=click.Choice(["lower", "upper", "classical"]), default="lower",
              show_default=True, help="下算子、上算子或经典算子")
@click.option("--lambda", "lam", type=float, default=0.0, show_default=True, help="函数族参数 λ")
@click.option("--alpha", type=float, default=0.0, show_default=True, help="函数族参数 α")
@click.option("--mu", type=float, required=True, help="算子阶数 mu < 0")
@click.option("--y", type=float, default=0.0, show_default=True, help="截断点（经典算子忽略）")
@click.option("--z", type=float, required=True, help="求值点 z > 0")
@click.pass_context
def fracderiv_command(ctx: click.Context, family: str, operator: str, lam: float, alpha: float,
                      mu: float, y: float, z: float):
    """
    对内置函数族数值地应用分数阶算子。

    Examples:

        inchyp fracderiv --family power --lambda 1 --mu -1 --y 0.5 --z 2

        inchyp fracderiv --family exp --alpha 0.5 --operator classical --mu -0.5 --z 1
    """
    state: CliState = ctx.obj
    f = FunctionFamily.from_string(family).build(lam, alpha)
    try:
        if operator == "classical":
            result = classical_fracderiv(f, mu, z, state.opts)
        else:
            result = ifrac(f, FracOpSpec(mu, y, z, operator), state.opts)
        result.require_finite(f"{operator} 算子")
    except ConvergenceError as e:
        _fail(str(e), EXIT_NOT_CONVERGED)
    except (ValueError, ArithmeticError) as e:
        _fail(str(e), EXIT_DOMAIN)
    _emit_result(result)


@cli.command("list")
@click.pass_context
def list_command(ctx: click.Context):
    """列出已注册的函数与验证套件。"""
    state: CliState = ctx.obj
    functions = state.functions()
    suites = state.suites()
    click.echo("函数:")
    for function_id in functions.list_functions():
        click.echo(f"  {function_id:<18} {functions.describe(function_id)}")
    click.echo("验证套件:")
    for name in suites.list_suites():
        config = suites.get_suite_config(name)
        marker = " [只报告]" if config.report_only else ""
        click.echo(f"  {name:<22} {config.description}{marker}")


def main() -> None:
    cli(prog_name="inchyp")


if __name__ == "__main__":
    main()
