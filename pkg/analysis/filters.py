"""
记录过滤表达式

    "c2=1,c1<a2/2,p=2"

逗号分隔的子句全部成立才算命中。左边是字段名，右边是整数、字段名
或 字段/整数（例如 a2/2）。比较在 Fraction 上进行，没有半格误差。
"""
from __future__ import annotations

import operator
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping

from utils.errors import UsageError

FIELDS = ("a2", "a3", "c2", "c1", "n", "p", "q", "y")

_OPS: dict[str, Callable[[Fraction, Fraction], bool]] = {
    "<=": operator.le,
    ">=": operator.ge,
    "!=": operator.ne,
    "=": operator.eq,
    "<": operator.lt,
    ">": operator.gt,
}

_CLAUSE = re.compile(r"^\s*([a-z0-9]+)\s*(<=|>=|!=|=|<|>)\s*(.+?)\s*$")
_RHS = re.compile(r"^(?:(-?\d+)|([a-z0-9]+)(?:\s*/\s*(\d+))?)$")


@dataclass(frozen=True)
class Clause:
    field: str
    op: str
    value: int | None = None
    ref: str | None = None
    divisor: int = 1

    def rhs(self, record: Mapping[str, int | None]) -> Fraction | None:
        if self.ref is None:
            return Fraction(self.value)
        base = record.get(self.ref)
        return None if base is None else Fraction(base, self.divisor)

    def holds(self, record: Mapping[str, int | None]) -> bool:
        left = record.get(self.field)
        right = self.rhs(record)
        # q 缺失（规范）时任何比较都不成立
        if left is None or right is None:
            return False
        return _OPS[self.op](Fraction(left), right)

    def __str__(self) -> str:
        if self.ref is None:
            rhs = str(self.value)
        else:
            rhs = self.ref if self.divisor == 1 else f"{self.ref}/{self.divisor}"
        return f"{self.field}{self.op}{rhs}"


@dataclass(frozen=True)
class RecordFilter:
    clauses: tuple[Clause, ...]

    def __call__(self, record: Mapping[str, int | None]) -> bool:
        return all(c.holds(record) for c in self.clauses)

    def __str__(self) -> str:
        return ",".join(str(c) for c in self.clauses)


def _parse_clause(text: str) -> Clause:
    m = _CLAUSE.match(text)
    if not m:
        raise UsageError(f"无法解析过滤子句: {text!r}")
    field, op, rhs = m.groups()
    if field not in FIELDS:
        raise UsageError(f"未知字段 {field!r}，可用: {', '.join(FIELDS)}")

    r = _RHS.match(rhs)
    if not r:
        raise UsageError(f"无法解析右侧表达式: {rhs!r}")
    number, ref, divisor = r.groups()
    if number is not None:
        return Clause(field=field, op=op, value=int(number))
    if ref not in FIELDS:
        raise UsageError(f"未知字段 {ref!r}，可用: {', '.join(FIELDS)}")
    div = int(divisor) if divisor else 1
    if div == 0:
        raise UsageError(f"除数不能为 0: {rhs!r}")
    return Clause(field=field, op=op, ref=ref, divisor=div)


def parse_filter(text: str) -> RecordFilter:
    parts = [p for p in text.split(",") if p.strip()]
    if not parts:
        raise UsageError("过滤表达式为空")
    return RecordFilter(clauses=tuple(_parse_clause(p) for p in parts))
