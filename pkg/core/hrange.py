"""
h-表示与 h-range 统计：X(h)、h0、h1、h2、间隙集

独立于步长生成器的 DP 预言机：
    H(N) = 用 {1, a2, a3} 表示 N 的最少张数
         = min(G(N), 1 + H(N − a3))        (N >= a3)
其中 G 为 {1, a2} 的硬币计数。按 a3 长度的块做 numpy 向量化。
"""
from __future__ import annotations

import numpy as np
from pydantic import BaseModel

from core.basis import Basis, coin_count
from utils.errors import PreconditionError, require


class HStats(BaseModel):
    """X(h) 的分解 X = (k+1)·a3 + Y"""
    h: int
    x_of_h: int
    k: int
    y_cap: int
    admissible: bool


class HRangeTable:
    """
    覆盖 [0, hmax·a3 + 1] 的最少张数表。
    所有 h <= hmax 的查询都由同一张表回答。
    """

    def __init__(self, basis: Basis, hmax: int):
        if hmax < 0:
            raise PreconditionError(f"hmax 必须 >= 0 (got {hmax})")
        self.basis = basis
        self.hmax = hmax
        a3 = basis.a3
        size = hmax * a3 + 2

        amounts = np.arange(size, dtype=np.int64)
        stamps = coin_count(basis.a2, amounts)
        for lo in range(a3, size, a3):
            hi = min(lo + a3, size)
            np.minimum(stamps[lo:hi], stamps[lo - a3:hi - a3] + 1, out=stamps[lo:hi])

        self.stamps = stamps
        # 前缀最大值：X(h) = (第一个 H > h 的位置) − 1
        self._prefix_max = np.maximum.accumulate(stamps)

    def _check_h(self, h: int) -> None:
        if not 0 <= h <= self.hmax:
            raise PreconditionError(f"h={h} 超出表范围 [0, {self.hmax}]")

    def represents(self, h: int, x: int) -> bool:
        self._check_h(h)
        if x < 0 or x > h * self.basis.a3:
            return False
        return bool(self.stamps[x] <= h)

    def x_of(self, h: int) -> int:
        self._check_h(h)
        return int(np.searchsorted(self._prefix_max, h, side="right")) - 1

    def x_values(self) -> np.ndarray:
        """X(0), X(1), ..., X(hmax)"""
        hs = np.arange(self.hmax + 1)
        return np.searchsorted(self._prefix_max, hs, side="right") - 1

    def gaps(self, h: int) -> list[int]:
        """X(h) < x < h·a3 且无 h-表示的 x，升序"""
        x = self.x_of(h)
        lo, hi = x + 1, h * self.basis.a3
        if lo >= hi:
            return []
        idx = np.nonzero(self.stamps[lo:hi] > h)[0] + lo
        return idx.tolist()

    def shift_holds(self, h: int) -> bool:
        """对 X(h) < x < h·a3：x 无 h-表示 ⇔ x + a3 无 (h+1)-表示"""
        if h + 1 > self.hmax:
            raise PreconditionError(f"shift 检查需要 h+1 <= hmax (h={h}, hmax={self.hmax})")
        a3 = self.basis.a3
        lo, hi = self.x_of(h) + 1, h * a3
        if lo >= hi:
            return True
        here = self.stamps[lo:hi] > h
        there = self.stamps[lo + a3:hi + a3] > h + 1
        return bool(np.array_equal(here, there))

    def stats(self, h: int) -> HStats:
        a3 = self.basis.a3
        x = self.x_of(h)
        admissible = x >= a3
        stats = HStats(h=h, x_of_h=x, k=x // a3 - 1, y_cap=x % a3, admissible=admissible)
        if admissible:
            require(stats.y_cap < a3 - 1, "Y<a3-1", f"X({h})={x} 分解出 Y = a3 − 1", self.basis.key)
        return stats


def _grown_table(basis: Basis, need: int) -> HRangeTable:
    return HRangeTable(basis, max(1, need))


def has_representation(basis: Basis, h: int, x: int) -> bool:
    if h < 0 or x < 0:
        return False
    return _grown_table(basis, h).represents(h, x)


def h_range(basis: Basis, h: int) -> int:
    if h < 1:
        raise PreconditionError(f"h 必须 >= 1 (got {h})")
    return HRangeTable(basis, h).x_of(h)


def h_stats(basis: Basis, h: int) -> HStats:
    if h < 1:
        raise PreconditionError(f"h 必须 >= 1 (got {h})")
    return HRangeTable(basis, h).stats(h)


def h_zero_closed_form(basis: Basis) -> int:
    """G 在 [0, a3) 上的最大值是 a2 + C2 − 2；再加上一张 a3 本身"""
    return max(1, basis.a2 + basis.c2 - 2)


def _h_zero_from(x_values: np.ndarray, a3: int) -> int | None:
    hits = np.nonzero(x_values[1:] >= a3)[0]
    return int(hits[0]) + 1 if hits.size else None


def h_zero(basis: Basis) -> int:
    """最小的 h 使 X(h) >= a3；表按倍增扩张，直到命中"""
    hmax = 8
    while True:
        found = _h_zero_from(HRangeTable(basis, hmax).x_values(), basis.a3)
        if found is not None:
            return found
        hmax *= 2


class HRangeProfile(BaseModel):
    """一次窗口验证的结果：h0/h1/h2 以及所用窗口"""
    h0: int
    h1: int
    h2: int
    window: int
    x_values: dict[int, int]


def h_profile(basis: Basis, window: int) -> HRangeProfile:
    """
    一张表同时给出 h0、h1、h2。
    h1 = 1 + 最后一个在 [1, h0+window] 内使 X(h+1) ≠ X(h)+a3 的 h（没有则为 1）
    h2 = max(h1, 1 + 最后一个在同一范围内 shift 不成立的 h)

    h2 按定义取 >= h1：gap 平移成立而 X(h+1) = X(h)+a3 还不成立的 h
    不算稳定，所以原始值小于 h1 时直接取 h1。
    """
    if window < 0:
        raise PreconditionError(f"window 必须 >= 0 (got {window})")
    a3 = basis.a3
    h0 = h_zero(basis)
    top = h0 + window
    table = HRangeTable(basis, top + 1)
    xs = table.x_values()

    step_fail = [h for h in range(1, top + 1) if xs[h + 1] != xs[h] + a3]
    h1 = step_fail[-1] + 1 if step_fail else 1

    shift_fail = [h for h in range(1, top + 1) if not table.shift_holds(h)]
    h2 = max(h1, shift_fail[-1] + 1 if shift_fail else 1)

    return HRangeProfile(
        h0=h0,
        h1=h1,
        h2=h2,
        window=window,
        x_values={h: int(xs[h]) for h in range(h0, top + 2)},
    )


def h_one(basis: Basis, window: int) -> int:
    return h_profile(basis, window).h1


def h_two(basis: Basis, window: int) -> int:
    """gap 集平移开始稳定的 h；定义上不小于 h1，见 h_profile"""
    return h_profile(basis, window).h2


def gap_set(basis: Basis, h: int) -> list[int]:
    if h < h_zero(basis):
        raise PreconditionError(f"gap_set 要求 h >= h0 (h={h})")
    return HRangeTable(basis, h).gaps(h)


def hrange_report(basis: Basis, window: int) -> dict:
    """给 CLI --stats 用：h0/h1/h2、窗口以及窗口内每个 X(h)"""
    profile = h_profile(basis, window)
    return {
        "a2": basis.a2,
        "a3": basis.a3,
        "h0": profile.h0,
        "h1": profile.h1,
        "h2": profile.h2,
        "window": profile.window,
        "X": {str(h): x for h, x in profile.x_values.items()},
    }
