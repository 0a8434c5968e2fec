"""
中央日志配置
"""
import logging
import sys


def setup_logging(level=logging.WARNING):
    """
    配置全局日志记录器

    日志写到标准错误，标准输出只留给 JSON/CSV 结果。

    Args:
        level: 日志级别 (e.g., logging.INFO, logging.DEBUG)，也接受 "INFO" 这样的字符串
    """
    if isinstance(level, str):
        name = level
        level = logging.getLevelName(name.upper())
        if not isinstance(level, int):
            raise ValueError(f"未知的日志级别: {name}")

    root_logger = logging.getLogger()
    root_logger.setLevel(level)

    # 如果已经有处理器，则先移除，防止重复输出
    if root_logger.hasHandlers():
        root_logger.handlers.clear()

    formatter = logging.Formatter(
        '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
    )

    stream_handler = logging.StreamHandler(sys.stderr)
    stream_handler.setFormatter(formatter)
    root_logger.addHandler(stream_handler)
