"""
极值基：固定 h，在 1 < a2 <= a2_max 上求 X(h) 最大的 {1, a2, a3}

对每个可容许基，X(h) 等于其规范终结步长生成器的潜在 h-range，
所以只需枚举步长生成器；胜者再用 DP 复核。
"""
from __future__ import annotations

import numpy as np
from pydantic import BaseModel

from analysis.underlying import potential_h_range
from core.basis import Basis, coin_count
from core.hrange import h_range, h_zero_closed_form
from core.stride import enumerate_sgs
from utils.errors import PreconditionError, require
from utils.log import get_logger

logger = get_logger("extremal")


class ExtremalResult(BaseModel):
    basis: Basis
    x: int
    h: int


def two_stamp_range(a2: int, h: int) -> int:
    """{1, a2} 的 h-range"""
    counts = coin_count(a2, np.arange(h * a2 + 2, dtype=np.int64))
    return int(np.argmax(counts > h)) - 1


def extremal_basis(h: int, a2_max: int) -> ExtremalResult:
    if h < 2 or a2_max < 2:
        raise PreconditionError(f"需要 h >= 2 且 a2_max >= 2 (h={h}, a2_max={a2_max})")

    best: ExtremalResult | None = None
    for a2 in range(2, a2_max + 1):
        # a3 > X_{1,a2}(h) + 1 时 X(h) 就停在 X_{1,a2}(h)，不可能更优
        top = min(two_stamp_range(a2, h) + 1, a2 * a2)
        for a3 in range(a2 + 1, top + 1):
            basis = Basis.of(a2, a3)
            if h < h_zero_closed_form(basis):
                continue
            terminator = enumerate_sgs(basis)[-1]
            if terminator.n > h:
                continue
            x = potential_h_range(terminator, h)
            if best is None or x > best.x:
                best = ExtremalResult(basis=basis, x=x, h=h)

    require(best is not None, "extremal", f"h={h}, a2_max={a2_max} 没有可容许的基")
    dp = h_range(best.basis, h)
    require(dp == best.x, "extremal-dp", f"潜在 h-range {best.x} ≠ DP 的 X(h)={dp}", best.basis.key)
    logger.info("h=%d 极值基 %s, X=%d", h, best.basis, best.x)
    return best
