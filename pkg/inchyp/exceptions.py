"""
数值计算中使用的异常类型
"""


class DomainError(ValueError):
    """参数超出函数定义域时抛出"""


class ConvergenceError(ArithmeticError):
    """级数或求积在预算内无法收敛、且无法给出有意义的部分结果时抛出"""
