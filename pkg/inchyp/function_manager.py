"""
可求值函数的动态加载器和管理器
"""
import importlib
import logging
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Union

from .config.eval_config import EvalOptions
from .config.function_config import FunctionConfig
from .config.loader import config_paths, load_function_config
from .kernels import EvalResult

logger = logging.getLogger(__name__)

FunctionPlugin = Callable[[Dict[str, Any], EvalOptions], EvalResult]

_SCHEMA_TYPES = {"number": float, "integer": int, "string": str}


def dynamic_import(plugin_path: str) -> Callable[..., Any]:
    """
    根据路径动态导入一个函数。

    Args:
        plugin_path: 插件路径，格式为 'module.submodule:function_name'

    Returns:
        可调用的已导入对象。

    Raises:
        ImportError: 如果模块或函数无法导入。
    """
    try:
        module_path, object_name = plugin_path.split(":")
        module = importlib.import_module(module_path)
        return getattr(module, object_name)
    except (ValueError, ImportError, AttributeError) as e:
        logger.error(f"动态导入插件 '{plugin_path}' 失败: {e}", exc_info=True)
        raise ImportError(f"无法从 '{plugin_path}' 导入插件。") from e


def _coerce_value(name: str, raw: Any, prop: Dict[str, Any]) -> Any:
    kind = _SCHEMA_TYPES.get(prop.get("type", "number"))
    if kind is None:
        raise ValueError(f"参数 '{name}' 的 schema 类型 {prop.get('type')} 不受支持")
    try:
        if kind is int:
            as_float = float(raw)
            if not as_float.is_integer():
                raise ValueError
            value: Any = int(as_float)
        else:
            value = kind(raw)
    except (TypeError, ValueError):
        raise ValueError(f"参数 '{name}' 需要 {prop.get('type')} 类型，实际为 {raw!r}")
    if "enum" in prop and value not in prop["enum"]:
        raise ValueError(f"参数 '{name}' 的取值 {value!r} 不受支持，支持的取值: {prop['enum']}")
    return value


class FunctionManager:
    """
    负责加载、管理和执行可求值函数。函数 id 是配置文件名（不含扩展名）。
    """

    def __init__(self, config_dir: Union[str, Path]):
        """
        初始化函数管理器。

        Args:
            config_dir: 存放函数 YAML 配置的目录。
        """
        self.functions: Dict[str, FunctionConfig] = {}
        self.callables: Dict[str, FunctionPlugin] = {}
        self._load_functions(Path(config_dir))

    def _load_functions(self, config_dir: Path) -> None:
        """加载目录中定义的所有函数。"""
        paths = config_paths(config_dir)
        logger.info(f"正在从 {config_dir} 加载 {len(paths)} 个函数...")
        for function_id, path in paths.items():
            try:
                config = load_function_config(path)
                if config.py_plugin:
                    self.functions[function_id] = config
                    self.callables[function_id] = dynamic_import(config.py_plugin)
                    logger.info(f"成功加载函数 '{function_id}' (来自 {config.py_plugin})")
                else:
                    logger.warning(f"函数配置 {path} 中缺少 'py_plugin' 字段，已跳过。")
            except Exception as e:
                logger.error(f"加载函数配置 {path} 失败: {e}", exc_info=True)

    def list_functions(self) -> List[str]:
        """返回所有已加载函数的 id 列表。"""
        return list(self.callables.keys())

    def describe(self, function_id: str) -> str:
        return self._config(function_id).description

    def get_function_schema(self, function_id: str) -> Dict[str, Any]:
        """获取指定函数的参数 Schema。"""
        return self._config(function_id).schema_def

    def _config(self, function_id: str) -> FunctionConfig:
        if function_id not in self.functions:
            raise ValueError(f"函数 '{function_id}' 未找到，可用的函数: {self.list_functions()}")
        return self.functions[function_id]

    def coerce_params(self, function_id: str, raw: Dict[str, Any]) -> Dict[str, Any]:
        """
        按 schema 校验并转换参数：未知参数与缺失的必填参数都报错，缺省值从 schema 补齐。

        Args:
            function_id: 函数 id
            raw: 参数名到原始值（通常是命令行字符串）的映射

        Returns:
            类型正确的参数字典
        """
        schema = self.get_function_schema(function_id)
        properties: Dict[str, Dict[str, Any]] = schema.get("properties", {})
        unknown = sorted(set(raw) - set(properties))
        if unknown:
            raise ValueError(f"函数 '{function_id}' 不接受参数 {unknown}，支持的参数: {list(properties)}")

        params: Dict[str, Any] = {}
        for name, prop in properties.items():
            if name in raw:
                params[name] = _coerce_value(name, raw[name], prop)
            elif "default" in prop:
                params[name] = prop["default"]
        missing = [name for name in schema.get("required", []) if name not in params]
        if missing:
            raise ValueError(f"函数 '{function_id}' 缺少必填参数: {missing}")
        return params

    def run_function(self, function_id: str, params: Dict[str, Any],
                     opts: Optional[EvalOptions] = None) -> EvalResult:
        """
        执行一个函数。

        Args:
            function_id: 要执行的函数 id。
            params: 已经过 coerce_params 的参数。
            opts: 求值选项。

        Returns:
            函数的 EvalResult。

        Raises:
            ConvergenceError: 结果溢出或为 nan。
        """
        if function_id not in self.callables:
            raise ValueError(f"函数 '{function_id}' 不可用或未加载。")

        logger.info(f"正在执行函数 '{function_id}'，参数: {params}")
        result = self.callables[function_id](params, opts if opts is not None else EvalOptions())
        logger.info(f"函数 '{function_id}' 执行完毕，converged={result.converged}")
        return result.require_finite(f"函数 '{function_id}'")
