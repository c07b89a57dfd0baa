"""
线程 T(e, i) 的几何

在上下文 (basis, n) 下：
    str = e·a2 − i·a3
    len = (n + i) − e + 1
    end = str + len − 1
线程只存 (e, i)，几何每次现算，所以同一线程可在不同 n 下复用。
len <= 0 的线程可以表示，由调用方过滤。
"""
from __future__ import annotations

from typing import Iterator, NamedTuple

from pydantic import BaseModel, ConfigDict, Field

from core.basis import Basis


class Thread(BaseModel):
    """T(e, i)：e 为 a2 的系数，i 为阶"""
    model_config = ConfigDict(frozen=True)

    e: int = Field(ge=0)
    i: int = Field(ge=0)

    def __str__(self) -> str:
        return f"T({self.e},{self.i})"


class Geometry(NamedTuple):
    start: int
    end: int
    length: int


def thread_geometry(basis: Basis, n: int, t: Thread) -> Geometry:
    start = t.e * basis.a2 - t.i * basis.a3
    length = (n + t.i) - t.e + 1
    return Geometry(start, start + length - 1, length)


def covers(basis: Basis, n: int, t: Thread, x: int) -> bool:
    g = thread_geometry(basis, n, t)
    return g.start <= x <= g.end


def crosses(basis: Basis, n: int, t: Thread, y: int) -> bool:
    """T 同时覆盖 y 与 y+1"""
    g = thread_geometry(basis, n, t)
    return g.start <= y < g.end


def thread_covers_thread(basis: Basis, n: int, t1: Thread, t2: Thread) -> bool:
    g1 = thread_geometry(basis, n, t1)
    g2 = thread_geometry(basis, n, t2)
    return g1.start <= g2.start and g1.end >= g2.end


def order_segments(basis: Basis, n: int, order: int) -> Iterator[tuple[int, Geometry]]:
    """
    给定阶 i，按 str 升序给出 len >= 1 且与 [0, a3) 相交的线程 (e, 几何)。
    不构造模型，供热循环使用。
    """
    a2, a3 = basis.a2, basis.a3
    # str <= a3 − 1
    e_hi = min((a3 - 1 + order * a3) // a2, n + order)
    # end >= 0  <=>  e·(a2 − 1) >= i·a3 − n − i
    need = order * a3 - n - order
    e_lo = max(0, -(-need // (a2 - 1)))
    for e in range(e_lo, e_hi + 1):
        start = e * a2 - order * a3
        length = n + order - e + 1
        end = start + length - 1
        if length >= 1 and end >= 0 and start < a3:
            yield e, Geometry(start, end, length)


def iter_order_threads(basis: Basis, n: int, order: int) -> Iterator[tuple[Thread, Geometry]]:
    for e, g in order_segments(basis, n, order):
        yield Thread(e=e, i=order), g
