"""
参数族：每个族给出 t 对应的基与期望的非规范步长生成器

族成员只要求“出现在 enumerate_sgs 的结果里”，不要求是基本步长生成器。
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from pydantic import BaseModel

from core.basis import Basis
from core.stride import StrideGenerator, enumerate_sgs
from utils.errors import UsageError
from utils.log import get_logger

logger = get_logger("families")

IntOfT = Callable[[int], int]


@dataclass(frozen=True)
class FamilySpec:
    key: str
    a2: IntOfT
    a3: IntOfT
    n: IntOfT
    q: IntOfT
    p: IntOfT | None = None
    t_min: int = 1

    def basis(self, t: int) -> Basis:
        return Basis.of(self.a2(t), self.a3(t))

    def describe(self) -> str:
        return f"{{1,{self.key}}}"


FAMILIES: dict[str, FamilySpec] = {
    # n 固定为 3，q = 2t
    "3t+2": FamilySpec(
        key="3t+2", a2=lambda t: 3 * t + 2, a3=lambda t: 3 * t + 5,
        n=lambda t: 3, p=lambda t: t, q=lambda t: 2 * t, t_min=2,
    ),
    "4t+1": FamilySpec(
        key="4t+1", a2=lambda t: 4 * t + 1, a3=lambda t: 6 * t + 2,
        n=lambda t: t + 2, p=lambda t: 2 * t - 2, q=lambda t: 2 * t, t_min=2,
    ),
    "2t+1": FamilySpec(
        key="2t+1", a2=lambda t: 2 * t + 1, a3=lambda t: 3 * t + 2,
        n=lambda t: t, p=lambda t: 2, q=lambda t: 4, t_min=4,
    ),
    "18t+11": FamilySpec(
        key="18t+11", a2=lambda t: 12 * t + 8, a3=lambda t: 18 * t + 11,
        n=lambda t: 3 * t + 3, p=lambda t: 6 * t + 2, q=lambda t: 6 * t + 4, t_min=0,
    ),
    "16t+11": FamilySpec(
        key="16t+11", a2=lambda t: 12 * t + 8, a3=lambda t: 16 * t + 11,
        n=lambda t: 2 * t + 3, p=lambda t: 6 * t + 1, q=lambda t: 6 * t + 4, t_min=1,
    ),
}


class FamilyOutcome(BaseModel):
    """一个 (族, t) 的检查结果"""
    family: str
    t: int
    basis: tuple[int, int, int]
    expected: str
    found: str | None
    passed: bool
    # t 低于族的起点且不匹配：已知偏离，只标记不计失败
    flagged: bool = False


def _expected_label(spec: FamilySpec, t: int) -> str:
    p = "?" if spec.p is None else spec.p(t)
    return f"n={spec.n(t)}, p={p}, q={spec.q(t)}"


def _matches(spec: FamilySpec, t: int, sg: StrideGenerator) -> bool:
    if sg.canonical or sg.n != spec.n(t) or sg.q != spec.q(t):
        return False
    return spec.p is None or sg.p == spec.p(t)


def check_family_member(spec: FamilySpec, t: int) -> FamilyOutcome:
    basis = spec.basis(t)
    series = enumerate_sgs(basis)
    hit = next((sg for sg in series if _matches(spec, t, sg)), None)
    if hit is None:
        found = "; ".join(f"n={sg.n}, p={sg.p}, q={sg.q}" for sg in series)
    else:
        found = f"n={hit.n}, p={hit.p}, q={hit.q}"
    return FamilyOutcome(
        family=spec.key,
        t=t,
        basis=basis.key,
        expected=_expected_label(spec, t),
        found=found or None,
        passed=hit is not None,
        flagged=hit is None and t < spec.t_min,
    )


def family_checks(t_max: int, keys: list[str] | None = None) -> list[FamilyOutcome]:
    """
    每个族从 t = 1（族起点为 0 时从 0）检查到 t_max。
    低于族起点 t_min 的成员不匹配时记为 flagged。
    """
    unknown = [k for k in keys or [] if k not in FAMILIES]
    if unknown:
        raise UsageError(f"未知的参数族 {unknown}，可用: {', '.join(FAMILIES)}")
    outcomes = []
    for key in keys or list(FAMILIES):
        spec = FAMILIES[key]
        for t in range(min(1, spec.t_min), t_max + 1):
            outcome = check_family_member(spec, t)
            if outcome.flagged:
                logger.info("族 %s, t=%d 低于起点 %d: 期望 %s，实际 %s", key, t, spec.t_min, outcome.expected, outcome.found)
            elif not outcome.passed:
                logger.warning("族 %s, t=%d: 期望 %s，实际 %s", key, t, outcome.expected, outcome.found)
            outcomes.append(outcome)
    return outcomes
