"""
日志：stdlib logging + rich.RichHandler，统一输出到 stderr
（stdout 只留给数据）
"""
import logging

from rich.console import Console
from rich.logging import RichHandler

from config import config

# stderr 控制台，供日志与汇总信息共用
err_console = Console(stderr=True)

_CONFIGURED = False


def setup_logging(level: str | None = None) -> None:
    """配置根 logger（只做一次）"""
    global _CONFIGURED
    if _CONFIGURED:
        if level:
            logging.getLogger("stridelab").setLevel(level)
        return

    handler = RichHandler(console=err_console, show_path=config.debug, rich_tracebacks=True)
    handler.setFormatter(logging.Formatter("%(message)s", datefmt="[%X]"))

    root = logging.getLogger("stridelab")
    root.addHandler(handler)
    root.setLevel(level or config.effective_log_level)
    root.propagate = False
    _CONFIGURED = True


def get_logger(name: str) -> logging.Logger:
    setup_logging()
    return logging.getLogger(f"stridelab.{name}")
