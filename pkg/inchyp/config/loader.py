"""
配置加载模块
"""

import logging
from pathlib import Path
from typing import Any, Dict, Union

import yaml

from .eval_config import EvalOptions
from .function_config import FunctionConfig
from .suite_config import SuiteConfig

# 初始化日志记录器
logger = logging.getLogger(__name__)

PathLike = Union[str, Path]

# 全局缓存
_function_config_cache: Dict[str, FunctionConfig] = {}
_suite_config_cache: Dict[str, SuiteConfig] = {}
_eval_options_cache: Dict[str, EvalOptions] = {}


def load_config(file_path: PathLike) -> Dict[str, Any]:
    """从 YAML 文件加载原始配置数据。"""
    logger.debug(f"正在从 {file_path} 加载原始配置...")
    try:
        with open(file_path, 'r', encoding='utf-8') as f:
            config = yaml.safe_load(f)
            logger.debug(f"成功从 {file_path} 加载配置。")
            return config or {}
    except FileNotFoundError:
        logger.error(f"配置文件未找到: {file_path}")
        raise
    except Exception as e:
        logger.error(f"加载或解析配置文件 {file_path} 时出错: {e}", exc_info=True)
        raise


def load_function_config(file_path: PathLike) -> FunctionConfig:
    """加载并验证函数配置。"""
    key = str(file_path)
    if key in _function_config_cache:
        logger.debug(f"从缓存返回函数配置: {key}")
        return _function_config_cache[key]

    logger.info(f"正在加载函数配置: {key}")
    config_data = load_config(file_path)
    function_config = FunctionConfig(**config_data)

    _function_config_cache[key] = function_config
    logger.info(f"函数配置 '{function_config.description}' 已加载并缓存。")
    return function_config


def load_suite_config(file_path: PathLike) -> SuiteConfig:
    """加载并验证验证套件配置。"""
    key = str(file_path)
    if key in _suite_config_cache:
        logger.debug(f"从缓存返回套件配置: {key}")
        return _suite_config_cache[key]

    logger.info(f"正在加载套件配置: {key}")
    config_data = load_config(file_path)
    suite_config = SuiteConfig(**config_data)

    _suite_config_cache[key] = suite_config
    logger.info(f"套件配置 '{Path(key).stem}' 已加载并缓存。")
    return suite_config


def load_eval_options(file_path: PathLike) -> EvalOptions:
    """加载默认求值选项；文件不存在时返回内置默认值。"""
    key = str(file_path)
    if key in _eval_options_cache:
        return _eval_options_cache[key]

    if not Path(key).exists():
        logger.debug(f"求值选项文件 {key} 不存在，使用内置默认值。")
        options = EvalOptions()
    else:
        options = EvalOptions(**load_config(file_path))

    _eval_options_cache[key] = options
    return options


def config_paths(config_dir: PathLike) -> Dict[str, Path]:
    """
    列出目录中的全部 YAML 配置

    Args:
        config_dir: 配置目录路径

    Returns:
        以文件名（不含扩展名）为键的路径字典，按名称排序
    """
    config_path = Path(config_dir)
    if not config_path.exists():
        logger.warning(f"配置目录不存在: {config_path}")
        return {}
    return {p.stem: p for p in sorted(config_path.glob("*.yaml"))}
