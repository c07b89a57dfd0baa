"""
异常体系

CLI 退出码约定：
- UsageError（含 BasisError / PreconditionError）-> 2
- ContractViolation -> 1（计算结果与引理/定理或交叉校验矛盾）
"""
from __future__ import annotations


class StrideLabError(Exception):
    """所有 stridelab 异常的根类"""


class UsageError(StrideLabError, ValueError):
    """用法错误：参数、过滤表达式等"""


class BasisError(UsageError):
    """非法的基 {1, a2, a3}"""


class PreconditionError(UsageError):
    """在前置条件之外调用了某个操作"""


class ContractViolation(StrideLabError, AssertionError):
    """
    计算对象违反了某条不变式。

    check: 失败的检查名（如 "L1"、"T1"、"fundamental==series[0]"）
    basis: 反例基 (1, a2, a3)，若有
    """

    def __init__(self, check: str, message: str, basis: tuple[int, int, int] | None = None):
        self.check = check
        self.message = message
        self.basis = basis
        super().__init__(check, message, basis)

    def __str__(self) -> str:
        b = self.basis
        where = f" @ {{{b[0]},{b[1]},{b[2]}}}" if b else ""
        return f"[{self.check}]{where} {self.message}"

    def __reduce__(self):
        # 进程池把子进程里的异常 pickle 回主进程
        return type(self), (self.check, self.message, self.basis)


def require(condition: bool, check: str, message: str, basis: tuple[int, int, int] | None = None) -> None:
    """断言辅助：条件不成立时抛出 ContractViolation"""
    if not condition:
        raise ContractViolation(check, message, basis)
