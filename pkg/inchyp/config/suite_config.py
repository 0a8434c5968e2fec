"""
恒等式验证套件的配置数据模型
"""

from typing import List, Optional

from pydantic import BaseModel, Field


class SuiteConfig(BaseModel):
    """
    验证套件配置，使用 Pydantic 进行数据验证。
    """
    description: str = Field(..., description="套件验证的恒等式")
    py_plugin: Optional[str] = Field(None, description="套件实现，格式为 'module.submodule:function_name'")
    tolerance: float = Field(..., gt=0, description="通过阈值，比较的是各用例残差的最大值")
    grid_size: int = Field(20, ge=1, description="随机网格的点数")
    report_only: bool = Field(False, description="只报告残差，--strict 时被跳过")
    identities: List[str] = Field([], description="套件覆盖的恒等式名称，仅用于文档")
