"""
步长生成器引擎

x 有阶为 i 的 n-生成 ⇔ x + i·a3 = c2·a2 + c1，c2 + c1 <= n + i
贪心取 c2 = floor(N / a2) 最优（每减少一个 a2 净增 a2 − 1 张），故
    x 有阶 i 的 n-生成 ⇔ f(x, i) = G(x + i·a3) − i <= n

两条路线：
- 直接路线：min_generation_order / classify_break / is_stride_generator，
  逐阶搜索到 generation_order_bound 为止
- 表路线：GenerationTable，一张 (阶 × 余数) 表给出所有 n 的结论，
  enumerate_sgs 与 sweep 用它
测试里两条路线以及线程图路线互相校验。
"""
from __future__ import annotations

from typing import Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, model_validator

from core.basis import Basis, coin_count
from core.threads import Thread, iter_order_threads, order_segments, thread_geometry
from utils.errors import PreconditionError, ContractViolation

BreakKind = Literal["canonical", "noncanonical"]


class Break(BaseModel):
    """断点 y 及其分类；q 仅在非规范时存在"""
    model_config = ConfigDict(frozen=True)

    y: int
    kind: BreakKind
    q: int | None = None

    @model_validator(mode="after")
    def _q_iff_noncanonical(self) -> "Break":
        if (self.kind == "noncanonical") != (self.q is not None):
            raise ValueError("q 必须且只能在非规范断点上给出")
        return self

    @property
    def canonical(self) -> bool:
        return self.kind == "canonical"


class StrideGenerator(BaseModel):
    """SG(A, n, p) 及其全部断点（y 升序）"""
    model_config = ConfigDict(frozen=True)

    basis: Basis
    n: int
    p: int
    breaks: tuple[Break, ...]

    @model_validator(mode="after")
    def _non_empty(self) -> "StrideGenerator":
        if not self.breaks:
            raise ValueError("步长生成器至少有一个断点")
        return self

    @property
    def first_break(self) -> Break:
        return self.breaks[0]

    @property
    def canonical(self) -> bool:
        return all(b.canonical for b in self.breaks)

    @property
    def q(self) -> int | None:
        """第一个断点的断点阶"""
        return self.first_break.q

    def label(self) -> str:
        return f"SG({self.basis}, {self.n}, {self.p})"


# ----------------------------------------------------------------------
# 直接路线
# ----------------------------------------------------------------------

def generation_order_bound(basis: Basis, n: int) -> int:
    """
    超过此阶，[0, a3) 中没有 x 有 n-生成：
    x + i·a3 <= (n+i)·a2  ⇒  i·(a3 − a2) <= n·a2
    """
    return (n * basis.a2) // (basis.a3 - basis.a2)


def has_generation(basis: Basis, budget: int, x: int, i: int) -> bool:
    return coin_count(basis.a2, x + i * basis.a3) <= budget + i


def min_generation_order(basis: Basis, n: int, x: int) -> int | None:
    if not 0 <= x < basis.a3:
        raise PreconditionError(f"x 必须在 [0, a3) 内 (x={x}, a3={basis.a3})")
    for i in range(generation_order_bound(basis, n) + 1):
        if has_generation(basis, n, x, i):
            return i
    return None


def classify_break(basis: Basis, n: int, p: int, y: int) -> Break:
    """预算 (n−1)+j 下搜索最小可解的 j；没有则规范"""
    cap = generation_order_bound(basis, n - 1) + 1
    for j in range(cap + 1):
        if has_generation(basis, n - 1, y, j):
            if j <= p + 1:
                raise ContractViolation(
                    "break", f"y={y} 在阶 {j} <= p+1={p + 1} 处有 (n−1)-生成，不是断点", basis.key
                )
            return Break(y=y, kind="noncanonical", q=j)
    return Break(y=y, kind="canonical")


def _orders_by_residue(basis: Basis, n: int) -> np.ndarray:
    """逐阶向量化：每个 x 的最小 n-生成阶，-1 表示无"""
    xs = np.arange(basis.a3, dtype=np.int64)
    orders = np.full(basis.a3, -1, dtype=np.int64)
    for i in range(generation_order_bound(basis, n) + 1):
        hit = (orders < 0) & (coin_count(basis.a2, xs + i * basis.a3) - i <= n)
        orders[hit] = i
        if not (orders < 0).any():
            break
    return orders


def is_stride_generator(basis: Basis, n: int) -> StrideGenerator | None:
    if n < 1:
        raise PreconditionError(f"n 必须 >= 1 (got {n})")
    orders = _orders_by_residue(basis, n)
    if (orders < 0).any():
        return None
    p = int(orders.max())

    xs = np.arange(basis.a3, dtype=np.int64)
    crossed = np.zeros(basis.a3, dtype=bool)
    for i in range(p + 2):
        crossed |= coin_count(basis.a2, xs + i * basis.a3) - i <= n - 1
    ys = np.nonzero(~crossed)[0]
    if ys.size == 0:
        return None
    breaks = tuple(classify_break(basis, n, p, int(y)) for y in ys)
    return StrideGenerator(basis=basis, n=n, p=p, breaks=breaks)


# ----------------------------------------------------------------------
# 表路线
# ----------------------------------------------------------------------

class GenerationTable:
    """
    f(x, i) = G(x + i·a3) − i，i ∈ [0, K]，x ∈ [0, a3)，以及其沿 i 的前缀最小值。

    f 每经过周期 L = a2 / gcd(C1, a2) <= a2 增加 L(a3 − a2)/a2 > 0，
    所以任何预算下的最小生成阶都 <= a2 − 1；再与 generation_order_bound
    取小，K 对所有 n <= a2 + C2 都足够。
    """

    def __init__(self, basis: Basis):
        self.basis = basis
        self.n_max = basis.a2 + basis.c2
        self.k = min(basis.a2 - 1, generation_order_bound(basis, self.n_max))

        orders = np.arange(self.k + 1, dtype=np.int64)[:, None]
        amounts = np.arange(basis.a3, dtype=np.int64)[None, :] + orders * basis.a3
        self.f = coin_count(basis.a2, amounts) - orders
        self.prefix_min = np.minimum.accumulate(self.f, axis=0)
        # M(k) = max_x P_x(k)，随 k 单调不增
        self.worst = self.prefix_min.max(axis=1)

    def order_for(self, n: int) -> int | None:
        """p(n) = min{k : M(k) <= n}；不存在返回 None"""
        if self.worst[-1] > n:
            return None
        return int(np.searchsorted(-self.worst, -n, side="left"))

    def has_break(self, n: int) -> bool:
        p = self.order_for(n)
        if p is None:
            return False
        return bool(self.worst[min(p + 1, self.k)] >= n)

    def stride_generator_at(self, n: int) -> StrideGenerator | None:
        if not 1 <= n <= self.n_max:
            raise PreconditionError(f"n 必须在 [1, {self.n_max}] 内 (got {n})")
        p = self.order_for(n)
        if p is None:
            return None
        level = self.prefix_min[min(p + 1, self.k)]
        ys = np.nonzero(level >= n)[0]
        if ys.size == 0:
            return None

        breaks = []
        for y in ys.tolist():
            column = self.prefix_min[:, y]
            if column[-1] >= n:
                breaks.append(Break(y=y, kind="canonical"))
            else:
                breaks.append(Break(y=y, kind="noncanonical", q=int(np.argmax(column <= n - 1))))
        return StrideGenerator(basis=self.basis, n=n, p=p, breaks=tuple(breaks))

    def candidate_ns(self) -> list[int]:
        """存在步长生成器的 n，降序"""
        return [n for n in range(self.n_max, 0, -1) if self.has_break(n)]


def enumerate_sgs(basis: Basis, table: GenerationTable | None = None) -> list[StrideGenerator]:
    """所有 SG(A, n, p)，n 从 a2 + C2 向下扫描，按 n 降序"""
    table = table or GenerationTable(basis)
    return [table.stride_generator_at(n) for n in table.candidate_ns()]


# ----------------------------------------------------------------------
# 线程图
# ----------------------------------------------------------------------

class DiagramThread(BaseModel):
    model_config = ConfigDict(frozen=True)

    thread: Thread
    start: int
    end: int
    length: int

    @property
    def order(self) -> int:
        return self.thread.i


class ThreadDiagram(BaseModel):
    """阶 0..max_order、len >= 1 且与 [0, a3) 相交的全部线程；按 (阶, str) 排序"""
    basis: Basis
    n: int
    max_order: int
    threads: list[DiagramThread]

    def by_order(self, order: int) -> list[DiagramThread]:
        return [t for t in self.threads if t.order == order]

    def coverage_orders(self) -> np.ndarray:
        """每个 x ∈ [0, a3) 的最小覆盖阶，-1 表示未覆盖"""
        return self._min_orders(shrink=0)

    def crossing_orders(self) -> np.ndarray:
        """每个 y 的最小穿越阶（同时覆盖 y 与 y+1），-1 表示无"""
        return self._min_orders(shrink=1)

    def _min_orders(self, shrink: int) -> np.ndarray:
        a3 = self.basis.a3
        best = np.full(a3, -1, dtype=np.int64)
        for t in self.threads:
            lo, hi = max(t.start, 0), min(t.end - shrink, a3 - 1)
            if lo > hi:
                continue
            seg = best[lo:hi + 1]
            seg[(seg < 0) | (seg > t.order)] = t.order
        return best


def thread_diagram(basis: Basis, n: int, max_order: int) -> ThreadDiagram:
    if n < 1 or max_order < 0:
        raise PreconditionError(f"需要 n >= 1 且 max_order >= 0 (n={n}, max_order={max_order})")
    threads = [
        DiagramThread(thread=t, start=g.start, end=g.end, length=g.length)
        for order in range(max_order + 1)
        for t, g in iter_order_threads(basis, n, order)
    ]
    return ThreadDiagram(basis=basis, n=n, max_order=max_order, threads=threads)


# ----------------------------------------------------------------------
# 引理检查（谓词）
# ----------------------------------------------------------------------

def break_lower_bound_ok(sg: StrideGenerator) -> bool:
    """L1：所有断点 y >= a3 − a2"""
    return all(b.y >= sg.basis.a3 - sg.basis.a2 for b in sg.breaks)


def no_mutual_cover(sg: StrideGenerator) -> bool:
    """L6：阶 <= p 的线程互不覆盖"""
    threads = thread_diagram(sg.basis, sg.n, sg.p).threads
    if len(threads) < 2:
        return True
    starts = np.array([t.start for t in threads])
    ends = np.array([t.end for t in threads])
    covered = (starts[:, None] <= starts[None, :]) & (ends[:, None] >= ends[None, :])
    np.fill_diagonal(covered, False)
    return not bool(covered.any())


def smallest_break_adjacent(sg: StrideGenerator) -> bool:
    """L9：最小断点紧贴某个 p 阶线程之前或位于其末端"""
    y = sg.first_break.y
    # str = a3 的线程不与 [0, a3) 相交，但 y = a3 − 1 仍可能紧贴它
    for e in range(sg.n + sg.p + 1):
        g = thread_geometry(sg.basis, sg.n, Thread(e=e, i=sg.p))
        if g.length >= 1 and (y == g.start - 1 or y == g.end):
            return True
    return False


def uniform_break_kind(sg: StrideGenerator) -> bool:
    """L10：全部断点同类"""
    return len({b.kind for b in sg.breaks}) == 1


def canonical_covers_higher_orders(sg: StrideGenerator) -> bool:
    """
    L12：规范 SG 中阶在 (p, p + a2] 且整段落在 [0, a3) 内的线程，
    都被某个阶 <= p 的线程覆盖。
    伸出 0 左侧的线程不算：覆盖它的低阶线程需要 e < 0，并不存在。
    """
    if not sg.canonical:
        return True
    a3 = sg.basis.a3
    low = thread_diagram(sg.basis, sg.n, sg.p).threads
    starts = np.array([t.start for t in low])
    ends = np.array([t.end for t in low])
    for order in range(sg.p + 1, sg.p + sg.basis.a2 + 1):
        for _, g in order_segments(sg.basis, sg.n, order):
            if g.start < 0 or g.end >= a3:
                continue
            if not bool(((starts <= g.start) & (ends >= g.end)).any()):
                return False
    return True


def lemma_checks(sg: StrideGenerator) -> dict[str, bool]:
    return {
        "L1": break_lower_bound_ok(sg),
        "L6": no_mutual_cover(sg),
        "L9": smallest_break_adjacent(sg),
        "L10": uniform_break_kind(sg),
        "L12": canonical_covers_higher_orders(sg),
    }
