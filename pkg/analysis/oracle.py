"""
暴力预言机：只用定义，不用任何表或向量化，也不调用引擎里的生成/断点
函数，供测试交叉校验快速引擎
"""
from __future__ import annotations

from core.basis import Basis
from core.stride import Break, StrideGenerator


def _order_cap(basis: Basis, budget: int) -> int:
    # c2 + c1 <= budget + i 且 c2·a2 + c1 = x + i·a3  ⇒  i·(a3 − a2) <= budget·a2
    return max(budget, 0) * basis.a2 // (basis.a3 - basis.a2)


def _generated(basis: Basis, budget: int, x: int, i: int) -> bool:
    """是否存在 c2, c1 >= 0：x + i·a3 = c2·a2 + c1 且 c2 + c1 <= budget + i"""
    amount = x + i * basis.a3
    return any(c2 + (amount - c2 * basis.a2) <= budget + i for c2 in range(amount // basis.a2 + 1))


def _min_order(basis: Basis, budget: int, x: int) -> int | None:
    for i in range(_order_cap(basis, budget) + 1):
        if _generated(basis, budget, x, i):
            return i
    return None


def oracle_generation_order(basis: Basis, n: int, x: int) -> int | None:
    """穷举 (i, c2, c1)：x + i·a3 = c2·a2 + c1 且 c2 + c1 <= n + i"""
    return _min_order(basis, n, x)


def oracle_stride_generator(basis: Basis, n: int) -> StrideGenerator | None:
    """
    (A) 每个 x ∈ [0, a3) 都有 n-生成，p 为最小生成阶的最大值；
    (B) 至少一个 y 在阶 <= p+1 都没有 (n−1)-生成。
    y 之后在任意阶有 (n−1)-生成则非规范，q 取最小的那个阶。
    """
    orders = [_min_order(basis, n, x) for x in range(basis.a3)]
    if any(o is None for o in orders):
        return None
    p = max(orders)

    breaks = []
    for y in range(basis.a3):
        if any(_generated(basis, n - 1, y, j) for j in range(p + 2)):
            continue
        q = _min_order(basis, n - 1, y)
        breaks.append(Break(y=y, kind="canonical") if q is None else Break(y=y, kind="noncanonical", q=q))
    if not breaks:
        return None
    return StrideGenerator(basis=basis, n=n, p=p, breaks=tuple(breaks))


def oracle_series(basis: Basis) -> list[StrideGenerator]:
    """逐个 n 按定义判断，n 降序"""
    series = []
    for n in range(basis.a2 + basis.c2, 0, -1):
        sg = oracle_stride_generator(basis, n)
        if sg is not None:
            series.append(sg)
    return series


def oracle_h_range(basis: Basis, h: int) -> int:
    """不超过 h 张邮票能凑出的和的集合，逐张扩张"""
    reachable = {0}
    for _ in range(h):
        reachable |= {s + a for s in reachable for a in (1, basis.a2, basis.a3)}
    x = 0
    while x + 1 in reachable:
        x += 1
    return x


def oracle_sweep_count(a2_max: int) -> int:
    total = 0
    for a2 in range(2, a2_max + 1):
        for a3 in range(a2 + 1, a2 * a2):
            series = oracle_series(Basis.of(a2, a3))
            total += sum(1 for sg in series if not sg.canonical)
    return total
