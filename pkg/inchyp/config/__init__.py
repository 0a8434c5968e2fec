"""
配置模块的初始化文件
"""

from .eval_config import EvalOptions, RuntimeConfig
from .function_config import FunctionConfig
from .loader import (
    config_paths,
    load_eval_options,
    load_function_config,
    load_suite_config,
)
from .suite_config import SuiteConfig

__all__ = [
    "EvalOptions",
    "RuntimeConfig",
    "FunctionConfig",
    "SuiteConfig",
    "config_paths",
    "load_eval_options",
    "load_function_config",
    "load_suite_config",
]
