"""
求值选项与运行时配置
"""

import os
from pathlib import Path
from typing import Any, Optional

from pydantic import BaseModel, ConfigDict, Field

# 仓库根目录下的 configs/
_DEFAULT_CONFIG_DIR = Path(__file__).resolve().parents[2] / "configs"


class EvalOptions(BaseModel):
    """
    控制每一次求值的精度与预算，使用 Pydantic 进行数据验证。
    """
    model_config = ConfigDict(frozen=True)

    rel_tol: float = Field(1e-12, gt=0, description="相对容差，级数与求积的停止判据")
    max_terms: int = Field(10000, ge=1, description="级数最多累加的项数（双重级数为对角线数）")
    quad_nodes: int = Field(64, ge=2, description="Gauss-Jacobi 求积的初始节点数，逐次加倍")
    adaptive_max_depth: int = Field(30, ge=1, description="自适应求积的细分深度，映射为 quad 的子区间上限")

    def with_overrides(self, **overrides: Any) -> "EvalOptions":
        """返回应用了覆盖值的新选项，值为 None 的键被忽略。"""
        data = self.model_dump()
        data.update({k: v for k, v in overrides.items() if v is not None})
        return EvalOptions(**data)


class RuntimeConfig:
    """进程级运行时配置，从环境变量读取"""
    __threads: int
    __config_dir: Path

    def __init__(self, threads: Optional[int] = None, config_dir: Optional[str] = None, **_kwargs: Any) -> None:
        if threads is None:
            env_threads = os.environ.get("INCHYP_THREADS")
            threads = int(env_threads) if env_threads else min(4, os.cpu_count() or 1)
        if threads < 1:
            raise ValueError(f"INCHYP_THREADS 必须 >= 1，实际为 {threads}")
        self.__threads = threads

        if config_dir is None:
            config_dir = os.environ.get("INCHYP_CONFIG_DIR")
        self.__config_dir = Path(config_dir) if config_dir else _DEFAULT_CONFIG_DIR

    @property
    def threads(self) -> int:
        return self.__threads

    @property
    def config_dir(self) -> Path:
        return self.__config_dir

    def __str__(self) -> str:
        return f"RuntimeConfig(threads={self.__threads}, config_dir={self.__config_dir})"
