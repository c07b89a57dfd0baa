"""
LangGraph 状态定义 - 定理验证流水线的上下文
"""
import operator
from typing import Annotated

from pydantic import BaseModel, Field

from analysis.families import FamilyOutcome
from analysis.sweep import SweepSummary


class CheckResult(BaseModel):
    """一条命名检查在全部样本上的结论"""
    name: str
    passed: bool
    cases: int = 0
    failures: int = 0
    detail: str = ""
    # 第一个反例基 (1, a2, a3)
    counterexample: tuple[int, int, int] | None = None


class FilterResult(BaseModel):
    """一个过滤表达式选出的基本步长生成器行"""
    expression: str
    rows: list[dict] = Field(default_factory=list)


class VerificationReport(BaseModel):
    a2_max: int
    h_window: int
    hrange_a2_max: int
    checks: list[CheckResult] = Field(default_factory=list)
    filters: list[FilterResult] = Field(default_factory=list)
    summary: SweepSummary | None = None
    # 低于族起点的已知偏离，不影响 passed
    flagged: list[FamilyOutcome] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> list[CheckResult]:
        return [c for c in self.checks if not c.passed]


class GraphState(BaseModel):
    """
    LangGraph 主状态 - 贯穿整个验证流程

    节点只返回部分更新；checks 用 operator.add 累加
    """
    # ===== 输入参数 =====
    a2_max: int = 12
    h_window: int = 4
    hrange_a2_max: int = 0
    family_keys: list[str] = Field(default_factory=list)
    family_t_max: int = 0
    filters: list[str] = Field(default_factory=list)
    include_examples: bool = False

    # (a2, a3)，a2 <= a2_max，a2 < a3 < a2²
    bases: list[tuple[int, int]] = Field(default_factory=list)

    # 每个基的基本步长生成器一行（过滤表达式作用在这里）
    fundamental_rows: list[dict] = Field(default_factory=list)

    summary: SweepSummary | None = None

    # 各节点追加的检查结果
    checks: Annotated[list[CheckResult], operator.add] = Field(default_factory=list)

    filter_results: list[FilterResult] = Field(default_factory=list)
    flagged_families: list[FamilyOutcome] = Field(default_factory=list)

    # 最终输出
    report: VerificationReport | None = None

    # 流程控制
    current_node: str = ""
