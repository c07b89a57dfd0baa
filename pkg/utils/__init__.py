"""
工具模块 - 日志与异常
"""
from utils.errors import BasisError, ContractViolation, PreconditionError, StrideLabError, UsageError, require
from utils.log import get_logger

__all__ = [
    "BasisError",
    "ContractViolation",
    "PreconditionError",
    "StrideLabError",
    "UsageError",
    "require",
    "get_logger",
]
