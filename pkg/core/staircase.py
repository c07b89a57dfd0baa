"""
基本步长生成器的阶梯构造与 C2 = 1 的覆盖线程

窗口 W = [(C2−1)·a2, C2·a2)。从 n0 = a2 + C2 − 2 出发（此时 T(C2−1, 0)
恰好覆盖整个窗口），逐步减小 n，直到出现第一个断点；得到的就是基本
步长生成器 SG(A, n, p)。之后按窗口内线程 T_i 的形状归类为
ZeroOrder / OrderOne / A1 / A2 / D1 / D2。

C1 > a2/2 为上升阶梯，C1 < a2/2 为下降阶梯。
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Literal

import numpy as np
from pydantic import BaseModel, ConfigDict

from core.basis import Basis
from core.stride import StrideGenerator, classify_break, enumerate_sgs, generation_order_bound
from core.threads import Geometry, Thread, order_segments, thread_geometry
from utils.errors import ContractViolation, PreconditionError, require
from utils.log import get_logger

logger = get_logger("staircase")

StaircaseTag = Literal["ZeroOrder", "OrderOne", "A1", "A2", "D1", "D2"]
Branch = Literal["ascending", "descending"]


class StaircaseClass(BaseModel):
    model_config = ConfigDict(frozen=True)

    tag: StaircaseTag
    branch: Branch | None = None

    @property
    def may_be_noncanonical(self) -> bool:
        return self.tag in ("A1", "D1")


class Staircase(BaseModel):
    """构造结果：基本步长生成器 + 分类"""
    model_config = ConfigDict(frozen=True)

    basis: Basis
    sg: StrideGenerator
    cls: StaircaseClass
    start_n: int


class OverlayThread(BaseModel):
    """C2 = 1 时起点落在 [0, n) 或 [0, n′) 内的线程 S_i"""
    model_config = ConfigDict(frozen=True)

    index: int
    order: int
    start: int
    length: int
    k_coeff: int
    t_off: int
    e: int

    @property
    def end(self) -> int:
        return self.start + self.length - 1

    @property
    def thread(self) -> Thread:
        return Thread(e=self.e, i=self.order)


class CoverWitness(BaseModel):
    """被 T0 = T(0, 0) 覆盖的线程 S_m，带奇偶分情况的参数"""
    model_config = ConfigDict(frozen=True)

    case: str
    m: int
    u: int
    k: int
    t: int
    thread: OverlayThread


def branch_of(basis: Basis) -> Branch:
    return "ascending" if 2 * basis.c1 > basis.a2 else "descending"


def window_thread(basis: Basis, i: int) -> Thread:
    """起点在窗口 [(C2−1)a2, C2a2) 内的唯一 i 阶线程"""
    lo = (basis.c2 - 1) * basis.a2 + i * basis.a3
    return Thread(e=-(-lo // basis.a2), i=i)


# ----------------------------------------------------------------------
# 构造
# ----------------------------------------------------------------------

_UNSET = np.iinfo(np.int64).max


def _scan(basis: Basis, n: int) -> tuple[np.ndarray, np.ndarray]:
    """每个 x 的最小覆盖阶与最小穿越阶（_UNSET 表示无）"""
    a3 = basis.a3
    cover = np.full(a3, _UNSET, dtype=np.int64)
    cross = np.full(a3, _UNSET, dtype=np.int64)
    top = min(basis.a2 - 1, generation_order_bound(basis, n))
    for order in range(top + 1):
        for _, g in order_segments(basis, n, order):
            lo = max(g.start, 0)
            hi = min(g.end, a3 - 1)
            np.minimum(cover[lo:hi + 1], order, out=cover[lo:hi + 1])
            hi = min(g.end - 1, a3 - 1)
            if lo <= hi:
                np.minimum(cross[lo:hi + 1], order, out=cross[lo:hi + 1])
    return cover, cross


def _descend(basis: Basis) -> tuple[int, int, list[int]]:
    start = basis.a2 + basis.c2 - 2
    for n in range(start, 0, -1):
        cover, cross = _scan(basis, n)
        if (cover == _UNSET).any():
            continue
        k = int(cover.max())
        ys = np.nonzero(cross > k + 1)[0]
        if ys.size:
            return n, k, ys.tolist()
    raise ContractViolation("staircase-descent", "n 降到 1 仍未出现断点", basis.key)


def _shape(basis: Basis, sg: StrideGenerator) -> StaircaseClass:
    p, n = sg.p, sg.n
    if p == 0:
        return StaircaseClass(tag="ZeroOrder")
    if p == 1:
        return StaircaseClass(tag="OrderOne", branch=branch_of(basis))

    y = sg.first_break.y
    a2, c2 = basis.a2, basis.c2
    require(
        basis.a3 - a2 <= y < c2 * a2,
        "staircase-window",
        f"最小断点 y={y} 不在 [a3−a2, C2·a2) 内",
        basis.key,
    )

    def geo(i: int) -> Geometry:
        return thread_geometry(basis, n, window_thread(basis, i))

    tp, tp1, t0 = geo(p), geo(p - 1), geo(0)
    branch = branch_of(basis)
    if branch == "ascending":
        if y == tp1.end == tp.start - 1:
            return StaircaseClass(tag="A1", branch=branch)
        if y == tp.end == c2 * a2 - 1:
            return StaircaseClass(tag="A2", branch=branch)
    else:
        if y == tp.end == tp1.start - 1:
            return StaircaseClass(tag="D1", branch=branch)
        if y == t0.end == tp.start - 1:
            return StaircaseClass(tag="D2", branch=branch)
    raise ContractViolation("staircase-shape", f"{branch} 阶梯在 y={y}, p={p} 处无法归类", basis.key)


@lru_cache(maxsize=512)
def build_staircase(basis: Basis) -> Staircase:
    """逐步减小 n 的字面构造；断点由穿越检查给出，分类看窗口"""
    n, p, ys = _descend(basis)
    sg = StrideGenerator(
        basis=basis, n=n, p=p, breaks=tuple(classify_break(basis, n, p, y) for y in ys)
    )
    cls = _shape(basis, sg)

    zero_order_expected = basis.c1 == 0 or basis.c1 >= basis.a2 - basis.c2
    require((p == 0) == zero_order_expected, "L15", f"p={p} 与 0 阶判据不一致", basis.key)
    if cls.tag in ("A2", "D2", "ZeroOrder", "OrderOne"):
        require(sg.canonical, "L14", f"{cls.tag} 型基本步长生成器应当规范", basis.key)

    logger.debug("fundamental %s -> %s", sg.label(), cls.tag)
    return Staircase(basis=basis, sg=sg, cls=cls, start_n=basis.a2 + basis.c2 - 2)


def classify_fundamental(basis: Basis) -> StaircaseClass:
    return build_staircase(basis).cls


def fundamental_sg(basis: Basis) -> StrideGenerator:
    return build_staircase(basis).sg


# ----------------------------------------------------------------------
# C2 >= 2 的 q 上界与闭式
# ----------------------------------------------------------------------

def qmax_bound(basis: Basis, n: int, p: int, branch: Branch) -> int | None:
    """
    断点阶的严格上界 q < bound（向上取整后的整数形式）
    下降：q < n/(C2−1) − 1；上升：q < (2n+2)/(2C2−1) − 1
    C2 = 1 时不适用
    """
    c2 = basis.c2
    if c2 == 1:
        return None
    if branch == "descending":
        bound = Fraction(n, c2 - 1) - 1
    else:
        bound = Fraction(2 * n + 2, 2 * c2 - 1) - 1
    return math.ceil(bound)


def closed_form_checks(staircase: Staircase) -> dict[str, bool]:
    """
    非规范、p >= 2 的 A1/D1 基本步长生成器的各条闭式关系。
    这些关系只在该情形下推出，规范或 p < 2 时返回空字典。
    """
    basis, sg, cls = staircase.basis, staircase.sg, staircase.cls
    if not cls.may_be_noncanonical or sg.canonical or sg.p < 2:
        return {}
    a2, c2, c1, n, p = basis.a2, basis.c2, basis.c1, sg.n, sg.p
    if cls.branch == "descending":
        return {
            "eq0": 2 * c1 <= a2 - 2 * c2,
            "eq1": (p + 1) * c1 > a2,
            "eq2": n == c1 + (p + 1) * (c2 - 1),
            "eq3": p * (c1 + c2 - 1) < a2 - 1,
            "eq4": Fraction(c2) < Fraction(a2, p * (p + 1)) + 1,
        }
    d = a2 - c1
    return {
        "eq1": p * d < a2,
        "eq2": n == d + p * c2 - 2,
        "eq3": (p + 1) * (d - c2) > a2 - 1,
        "eq4": Fraction(c2) < Fraction(a2, p * (p + 1)) + Fraction(1, p + 1),
    }


# ----------------------------------------------------------------------
# C2 = 1：覆盖线程、覆盖见证、极小线程
# ----------------------------------------------------------------------

def _overlay_context(basis: Basis) -> tuple[Staircase, int, int]:
    """返回 (构造, n 或 n′, s)，a2 = p·n + s（下降）或 a2 = p·n′ + s（上升）"""
    if basis.c2 != 1:
        raise PreconditionError(f"覆盖线程只对 C2 = 1 定义 ({basis} 的 C2={basis.c2})")
    staircase = build_staircase(basis)
    sg, cls = staircase.sg, staircase.cls
    if sg.p < 2 or not cls.may_be_noncanonical:
        raise PreconditionError(f"{basis} 的基本步长生成器为 {cls.tag}, p={sg.p}，不是 p >= 2 的 A1/D1")

    if cls.branch == "descending":
        base = basis.c1
        require(sg.n == base, "eq2", f"C2=1 下降阶梯应有 n = C1 (n={sg.n})", basis.key)
    else:
        base = basis.a2 - basis.c1
        require(sg.n == base + sg.p - 2, "eq2", f"C2=1 上升阶梯应有 n = n′ + p − 2 (n={sg.n})", basis.key)
    s = basis.a2 - sg.p * base
    require(1 <= s < base, "s-range", f"s={s} 不在 [1, {base}) 内", basis.key)
    return staircase, base, s


def _overlay_record(staircase: Staircase, base: int, s: int, i: int) -> OverlayThread:
    p, n = staircase.sg.p, staircase.sg.n
    if staircase.cls.branch == "descending":
        k, t = divmod(i * s, base)
        return OverlayThread(
            index=i, order=i * p + k, start=t, length=n + 1 - i, k_coeff=k, t_off=t, e=i * (p + 1) + k
        )
    k = -(-(i * s) // base)
    t = k * base - i * s
    order = i * p + k
    return OverlayThread(
        index=i, order=order, start=t, length=n - i * (p - 1) - k + 1, k_coeff=k, t_off=t, e=2 * order - i
    )


def overlay_threads(basis: Basis) -> list[OverlayThread]:
    staircase, base, s = _overlay_context(basis)
    n = staircase.sg.n
    records = []
    for i in range(1, base + 1):
        rec = _overlay_record(staircase, base, s, i)
        if rec.length < 1:
            continue
        g = thread_geometry(basis, n, rec.thread)
        require(
            (g.start, g.length) == (rec.start, rec.length),
            "overlay-geometry",
            f"S_{i} 闭式 (str={rec.start}, len={rec.length}) 与 {rec.thread} 的几何 {g} 不符",
            basis.key,
        )
        records.append(rec)
    return records


def _covered_by_t0(rec: OverlayThread, n: int) -> bool:
    # len <= 0 的线程不存在，按被覆盖处理
    return rec.start >= 0 and (rec.length <= 0 or rec.end <= n)


def covered_thread_witness(basis: Basis) -> CoverWitness:
    staircase, base, s = _overlay_context(basis)
    if base == 1:
        raise PreconditionError(f"{basis}: n 或 n′ = 1 时没有覆盖见证（此时步长生成器规范）")

    even_base, even_s = base % 2 == 0, s % 2 == 0
    if staircase.cls.branch == "descending":
        if even_base:
            m = base // 2
            u, t, index = (s // 2, 0, m) if even_s else ((s - 1) // 2, m, m)
        else:
            m = (base + 1) // 2
            u, t, index = (s // 2, s // 2, m) if even_s else ((s - 1) // 2, m - (s - 1) // 2 - 1, m - 1)
    else:
        if even_base:
            m = base // 2
            u, t = (s // 2, 0) if even_s else ((s + 1) // 2, m)
        else:
            m = (base - 1) // 2
            u, t = (s // 2, s // 2) if even_s else ((s + 1) // 2, m + (s + 1) // 2)
        index = m
    case = f"{'even' if even_base else 'odd'}-{'even' if even_s else 'odd'}"

    rec = _overlay_record(staircase, base, s, index)
    require(
        (rec.k_coeff, rec.t_off) == (u, t),
        "witness-case",
        f"{case}: 期望 k={u}, t={t}，实际 k={rec.k_coeff}, t={rec.t_off}",
        basis.key,
    )
    require(rec.order > 0, "witness-distinct", "见证线程与 T0 相同", basis.key)
    require(_covered_by_t0(rec, staircase.sg.n), "witness-cover", f"S_{index} 未被 T0 覆盖", basis.key)
    # 阶 >= ord(S_m) 的线程都被更低阶的线程覆盖，所以系列中每个断点阶都更小
    orders = [b.q for sg in enumerate_sgs(basis) for b in sg.breaks if b.q is not None]
    require(
        all(q < rec.order for q in orders),
        "witness-bound",
        f"S_{index} 的阶 {rec.order} 不大于断点阶 {max(orders, default=0)}",
        basis.key,
    )
    return CoverWitness(case=f"{staircase.cls.branch}:{case}", m=m, u=u, k=rec.k_coeff, t=rec.t_off, thread=rec)


def minimal_threads(basis: Basis) -> list[tuple[list[OverlayThread], OverlayThread]]:
    """
    按局部最小起点把 S_1, S_2, ... 切成连续的组。
    S_i 是极小线程：str(S_i) < str(S_{i−1})（S_0 = T0，str 为 0），
    且 S_i 是最后一个或 str(S_{i+1}) > str(S_i)。
    """
    records = overlay_threads(basis)
    groups: list[tuple[list[OverlayThread], OverlayThread]] = []
    current: list[OverlayThread] = []
    prev_start = 0
    for pos, rec in enumerate(records):
        current.append(rec)
        nxt = records[pos + 1] if pos + 1 < len(records) else None
        if rec.start < prev_start and (nxt is None or nxt.start > rec.start):
            groups.append((current, rec))
            current = []
        prev_start = rec.start
    if current:
        logger.debug("%s: 末尾 %d 个覆盖线程没有极小线程，未成组", basis, len(current))
    return groups
