"""
h-基与步长生成器之间的桥梁

X(h) = (k+1)·a3 + Y，0 <= Y < a3 − 1
⇒ 基 B(A, h) 之下有步长生成器 SG(A, h − k, p)，p <= k，断点 y = Y + 1
"""
from __future__ import annotations

from pydantic import BaseModel

from core.basis import Basis
from core.hrange import HRangeTable
from core.stride import StrideGenerator, is_stride_generator
from utils.errors import PreconditionError, require


class UnderlyingResult(BaseModel):
    sg: StrideGenerator
    k: int
    y: int
    h: int


def potential_h_range(sg: StrideGenerator, h: int) -> int:
    """P = (h − n + 1)·a3 + y − 1，y 为第一个断点"""
    if h < sg.n:
        raise PreconditionError(f"需要 h >= n (h={h}, n={sg.n})")
    return (h - sg.n + 1) * sg.basis.a3 + sg.first_break.y - 1


def underlying_sg(basis: Basis, h: int, table: HRangeTable | None = None) -> UnderlyingResult:
    if h < 1:
        raise PreconditionError(f"h 必须 >= 1 (got {h})")
    if table is None or table.hmax < h:
        table = HRangeTable(basis, h)

    stats = table.stats(h)
    if not stats.admissible:
        raise PreconditionError(f"需要 h >= h0：h={h} 时 X(h)={stats.x_of_h} < a3={basis.a3}")
    k, y = stats.k, stats.y_cap + 1
    n = h - k

    sg = is_stride_generator(basis, n)
    require(sg is not None, "L11", f"n = h − k = {n} 处没有步长生成器", basis.key)
    require(sg.p <= k, "L11", f"p={sg.p} > k={k}", basis.key)
    require(any(b.y == y for b in sg.breaks), "L11", f"y = Y+1 = {y} 不是 {sg.label()} 的断点", basis.key)
    require(sg.canonical, "T2", f"h={h} 的底层步长生成器 {sg.label()} 非规范", basis.key)
    return UnderlyingResult(sg=sg, k=k, y=y, h=h)
