"""
可求值函数的配置数据模型
"""

from typing import Any, Dict, Optional

from pydantic import BaseModel, ConfigDict, Field


class FunctionConfig(BaseModel):
    """
    一个可通过 `eval`/`table` 调用的函数，使用 Pydantic 进行数据验证。
    """
    model_config = ConfigDict(populate_by_name=True)

    description: str = Field(..., description="函数的详细描述")
    py_plugin: Optional[str] = Field(None, description="要动态加载的 Python 插件路径，格式为 'module.submodule:function_name'")
    schema_def: Dict[str, Any] = Field(..., alias='schema', description="函数参数的 JSON Schema 定义")
