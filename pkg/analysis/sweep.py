"""
非规范步长生成器全量扫描

按 a2 切分工作，交给进程池；executor.map 保持输入顺序，所以记录流
与 jobs 数无关，始终按 (a2, a3, n 降序) 排列。唯一的写出端在父进程。
"""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from functools import partial
from typing import Callable, Iterable, Iterator

from pydantic import BaseModel, Field

from core.basis import Basis
from core.stride import GenerationTable, StrideGenerator, enumerate_sgs, uniform_break_kind
from utils.errors import PreconditionError, require
from utils.log import get_logger

logger = get_logger("sweep")


class SweepRecord(BaseModel):
    """一个非规范步长生成器；q 取自第一个断点"""
    a2: int
    a3: int
    c2: int
    c1: int
    n: int
    p: int
    q: int
    y: int

    @classmethod
    def of(cls, sg: StrideGenerator) -> "SweepRecord":
        b = sg.basis
        return cls(a2=b.a2, a3=b.a3, c2=b.c2, c1=b.c1, n=sg.n, p=sg.p, q=sg.q, y=sg.first_break.y)


RecordSink = Callable[[SweepRecord], None]


def a3_range(a2: int, include_degenerate: bool = False) -> range:
    """默认 a2 < a3 < a2²；包含退化基时放宽到 2·a2²"""
    top = 2 * a2 * a2 if include_degenerate else a2 * a2 - 1
    return range(a2 + 1, top + 1)


def check_series(series: list[StrideGenerator]) -> None:
    """系列形状：n 严格递减，p 严格递增，恰好以一个规范步长生成器结尾"""
    require(bool(series), "series", "没有任何步长生成器")
    key = series[0].basis.key
    for prev, cur in zip(series, series[1:]):
        require(cur.n < prev.n and cur.p > prev.p, "series", f"{prev.label()} 之后是 {cur.label()}", key)
    canon = [sg for sg in series if sg.canonical]
    require(
        len(canon) == 1 and canon[0] is series[-1],
        "series",
        f"规范步长生成器应当唯一且位于末尾，实际 {[sg.label() for sg in canon]}",
        key,
    )


def check_noncanonical(sg: StrideGenerator) -> None:
    key, q = sg.basis.key, sg.q
    require(uniform_break_kind(sg), "L10", f"{sg.label()} 的断点类型不一致", key)
    require(q > sg.p + 1, "q>p+1", f"{sg.label()}: q={q} <= p+1", key)
    require(q >= 4, "q>=4", f"{sg.label()}: q={q} < 4", key)
    require(sg.n + q <= sg.basis.a2, "T1", f"{sg.label()}: n+q={sg.n + q} > a2", key)


def sweep_basis(basis: Basis) -> list[SweepRecord]:
    series = enumerate_sgs(basis, GenerationTable(basis))
    check_series(series)
    records = []
    for sg in series:
        if sg.canonical:
            continue
        check_noncanonical(sg)
        records.append(SweepRecord.of(sg))
    return records


def _sweep_a2(a2: int, include_degenerate: bool = False) -> list[SweepRecord]:
    """单个 a2 的全部记录（进程池的工作单元）"""
    records = []
    for a3 in a3_range(a2, include_degenerate):
        records.extend(sweep_basis(Basis.of(a2, a3)))
    return records


def iter_sweep(a2_max: int, jobs: int = 1, include_degenerate: bool = False) -> Iterator[SweepRecord]:
    a2_values = range(2, a2_max + 1)
    worker = partial(_sweep_a2, include_degenerate=include_degenerate)
    if jobs <= 1:
        batches: Iterable[list[SweepRecord]] = map(worker, a2_values)
        for a2, batch in zip(a2_values, batches):
            logger.debug("a2=%d: %d 条记录", a2, len(batch))
            yield from batch
        return

    with ProcessPoolExecutor(max_workers=jobs) as executor:
        for a2, batch in zip(a2_values, executor.map(worker, a2_values)):
            logger.debug("a2=%d: %d 条记录", a2, len(batch))
            yield from batch


def sweep_noncanonical(
    a2_max: int,
    emit: RecordSink,
    jobs: int = 1,
    include_degenerate: bool = False,
) -> int:
    if a2_max < 2:
        raise PreconditionError(f"a2_max 必须 >= 2 (got {a2_max})")
    count = 0
    for record in iter_sweep(a2_max, jobs, include_degenerate):
        emit(record)
        count += 1
    logger.info("a2 <= %d: 共 %d 个非规范步长生成器", a2_max, count)
    return count


class SweepSummary(BaseModel):
    """扫描统计：严格性计数、最小 q、各 a2 的最大 C2、最坏 (n+q)/a2"""
    total: int = 0
    strict: int = 0
    min_q: int | None = None
    max_c2: dict[int, int] = Field(default_factory=dict)
    worst: SweepRecord | None = None

    def add(self, record: SweepRecord) -> None:
        self.total += 1
        if record.n + record.q < record.a2:
            self.strict += 1
        if self.min_q is None or record.q < self.min_q:
            self.min_q = record.q
        self.max_c2[record.a2] = max(self.max_c2.get(record.a2, 0), record.c2)
        if self.worst is None or self.ratio(record) > self.ratio(self.worst):
            self.worst = record

    @staticmethod
    def ratio(record: SweepRecord) -> Fraction:
        return Fraction(record.n + record.q, record.a2)

    @property
    def all_strict(self) -> bool:
        return self.strict == self.total

    @property
    def top_c2(self) -> int | None:
        return max(self.max_c2.values(), default=None)


def sweep_summary(records: Iterable[SweepRecord]) -> SweepSummary:
    summary = SweepSummary()
    for record in records:
        summary.add(record)
    return summary
