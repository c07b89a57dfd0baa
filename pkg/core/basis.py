"""
基 A = {1, a2, a3} 与 {1, a2} 的硬币计数

a3 = C2·a2 + C1，0 <= C1 < a2，C2 >= 1
"""
from __future__ import annotations

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from utils.errors import BasisError


class Basis(BaseModel):
    """三元基 {1, a2, a3}；c2/c1 由 a3 = c2·a2 + c1 推出"""
    model_config = ConfigDict(frozen=True)

    a2: int = Field(gt=1)
    a3: int

    @model_validator(mode="after")
    def _check_order(self) -> "Basis":
        if self.a3 <= self.a2:
            raise ValueError(f"a3 必须大于 a2 (a2={self.a2}, a3={self.a3})")
        return self

    @classmethod
    def of(cls, a2: int, a3: int) -> "Basis":
        """构造并把校验失败统一为 BasisError"""
        if a2 <= 1 or a3 <= a2:
            raise BasisError(f"非法的基 {{1,{a2},{a3}}}: 需要 1 < a2 < a3")
        return cls(a2=a2, a3=a3)

    @classmethod
    def parse(cls, text: str) -> "Basis":
        """解析 "1,a2,a3"；前导 1 必须存在"""
        parts = [p.strip() for p in text.replace("{", "").replace("}", "").split(",") if p.strip()]
        if len(parts) != 3:
            raise BasisError(f"基必须写成 1,a2,a3: {text!r}")
        try:
            one, a2, a3 = (int(p) for p in parts)
        except ValueError as e:
            raise BasisError(f"基中含非整数: {text!r}") from e
        if one != 1:
            raise BasisError(f"基的第一个元素必须是 1: {text!r}")
        return cls.of(a2, a3)

    @property
    def c2(self) -> int:
        return self.a3 // self.a2

    @property
    def c1(self) -> int:
        return self.a3 % self.a2

    @property
    def is_degenerate(self) -> bool:
        """a3 >= a2^2：这类基的所有步长生成器都是 0 阶规范的"""
        return self.a3 >= self.a2 * self.a2

    @property
    def key(self) -> tuple[int, int, int]:
        return (1, self.a2, self.a3)

    def __str__(self) -> str:
        return f"{{1,{self.a2},{self.a3}}}"


def coin_count(a2: int, amount):
    """
    G(N) = N // a2 + N % a2：只用 {1, a2} 表示 N 所需的最少张数。
    标量或 numpy 数组均可。
    """
    if isinstance(amount, np.ndarray):
        q, r = np.divmod(amount, a2)
        return q + r
    return amount // a2 + amount % a2
