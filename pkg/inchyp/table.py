"""
网格表生成：按扫描轴的字典序逐点求值，输出 CSV 或逐行 JSON

CSV 表头固定为：各扫描参数名（按 --sweep 给出的顺序），然后是
value, abs_err_est, effort, converged, error。失败的点 error 列为诊断信息，
其余结果列为空。浮点数用 repr 输出，可以无损读回。
"""

import csv
import itertools
import json
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, TextIO, Union

import numpy as np

from .config.eval_config import EvalOptions
from .function_manager import FunctionManager

logger = logging.getLogger(__name__)

RESULT_COLUMNS = ["value", "abs_err_est", "effort", "converged", "error"]


class OutputFormat(Enum):
    CSV = "csv"
    JSON = "json"

    @classmethod
    def from_string(cls, value: Union[str, "OutputFormat"]) -> "OutputFormat":
        if isinstance(value, cls):
            return value
        try:
            return cls(value.lower())
        except ValueError:
            raise ValueError(f"不支持的输出格式: {value}，支持的格式: {[f.value for f in cls]}")


@dataclass(frozen=True)
class SweepAxis:
    """一条扫描轴：参数名与 [start, stop] 上等距的 steps 个点"""
    name: str
    start: float
    stop: float
    steps: int

    def __post_init__(self):
        if self.steps < 1:
            raise ValueError(f"扫描轴 '{self.name}' 的点数必须 >= 1，实际为 {self.steps}")

    @classmethod
    def from_string(cls, text: str) -> "SweepAxis":
        """解析 'name:start:stop:steps'"""
        parts = text.split(":")
        if len(parts) != 4:
            raise ValueError(f"扫描轴格式应为 name:start:stop:steps，实际为 '{text}'")
        name, start, stop, steps = parts
        try:
            return cls(name, float(start), float(stop), int(steps))
        except ValueError as e:
            raise ValueError(f"无法解析扫描轴 '{text}': {e}") from e

    def values(self) -> List[float]:
        return [float(v) for v in np.linspace(self.start, self.stop, self.steps)]


@dataclass
class TableRequest:
    """一次网格表请求"""
    function_id: str
    params: Dict[str, Any] = field(default_factory=dict)
    sweeps: List[SweepAxis] = field(default_factory=list)
    fmt: OutputFormat = OutputFormat.CSV

    def validate(self, manager: FunctionManager) -> None:
        """扫描轴必须是函数声明过的参数，且不能重复或与固定参数冲突。"""
        declared = manager.get_function_schema(self.function_id).get("properties", {})
        names = [axis.name for axis in self.sweeps]
        for name in names:
            if name not in declared:
                raise ValueError(f"扫描轴 '{name}' 不是函数 '{self.function_id}' 的参数，支持的参数: {list(declared)}")
        if len(set(names)) != len(names):
            raise ValueError(f"扫描轴重复: {names}")
        clash = sorted(set(names) & set(self.params))
        if clash:
            raise ValueError(f"参数 {clash} 同时作为固定参数与扫描轴给出")


def _evaluate_row(manager: FunctionManager, request: TableRequest, point: Dict[str, float],
                  opts: EvalOptions) -> Dict[str, Any]:
    row: Dict[str, Any] = dict(point)
    try:
        params = manager.coerce_params(request.function_id, {**request.params, **point})
        row.update(manager.run_function(request.function_id, params, opts).to_dict())
        row["error"] = ""
    except (ValueError, ArithmeticError) as e:
        logger.info(f"网格点 {point} 求值失败: {e}")
        row.update({"value": None, "abs_err_est": None, "effort": None, "converged": None, "error": str(e)})
    return row


def generate_rows(manager: FunctionManager, request: TableRequest, opts: Optional[EvalOptions] = None,
                  threads: int = 1) -> List[Dict[str, Any]]:
    """
    按字典序（第一条轴最外层）对每个网格点求值

    Args:
        manager: 函数管理器
        request: 网格表请求
        opts: 求值选项
        threads: 并发线程数，输出顺序与之无关

    Returns:
        行字典列表
    """
    opts = opts if opts is not None else EvalOptions()
    request.validate(manager)
    names = [axis.name for axis in request.sweeps]
    points = [dict(zip(names, combo)) for combo in itertools.product(*(axis.values() for axis in request.sweeps))]
    logger.info(f"函数 '{request.function_id}' 的网格共 {len(points)} 个点")

    with ThreadPoolExecutor(max_workers=max(1, threads)) as pool:
        return list(pool.map(lambda point: _evaluate_row(manager, request, point, opts), points))


def _cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def write_rows(rows: List[Dict[str, Any]], sweep_names: List[str], fmt: Union[str, OutputFormat],
               stream: TextIO) -> None:
    """把行写成 CSV（带表头）或每行一个 JSON 对象。"""
    fmt = OutputFormat.from_string(fmt)
    if fmt is OutputFormat.JSON:
        for row in rows:
            stream.write(json.dumps(row) + "\n")
        return

    writer = csv.writer(stream, lineterminator="\n")
    columns = sweep_names + RESULT_COLUMNS
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_cell(row.get(column)) for column in columns])
