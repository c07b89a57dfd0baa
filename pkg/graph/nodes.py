"""
LangGraph 节点定义

每个节点负责一组检查，返回部分状态更新。
单个基上抛出的 ContractViolation 被记成失败的检查，流程继续，
最后由 node_report 汇总。
"""
from __future__ import annotations

from fractions import Fraction

from analysis.families import family_checks
from analysis.filters import parse_filter
from analysis.sweep import SweepRecord, a3_range, check_noncanonical, check_series, sweep_summary
from analysis.underlying import potential_h_range, underlying_sg
from core.basis import Basis
from core.hrange import HRangeTable, h_profile, h_zero_closed_form
from core.staircase import build_staircase, closed_form_checks
from core.stride import GenerationTable, enumerate_sgs, lemma_checks
from graph.state import CheckResult, FilterResult, GraphState, VerificationReport
from utils.errors import ContractViolation
from utils.log import get_logger

logger = get_logger("graph")


class _Tally:
    """按检查名累计样本数与失败，保留第一个反例"""

    def __init__(self):
        self._results: dict[str, CheckResult] = {}

    def record(self, name: str, ok: bool, basis: Basis | None = None, detail: str = "") -> None:
        res = self._results.setdefault(name, CheckResult(name=name, passed=True))
        res.cases += 1
        if ok:
            return
        res.failures += 1
        if res.passed:
            res.passed = False
            res.detail = detail
            res.counterexample = basis.key if basis else None
            logger.error("❌ [%s] %s %s", name, basis or "", detail)

    def violation(self, exc: ContractViolation) -> None:
        res = self._results.setdefault(exc.check, CheckResult(name=exc.check, passed=True))
        res.cases += 1
        res.failures += 1
        if res.passed:
            res.passed = False
            res.detail = str(exc)
            res.counterexample = exc.basis
            logger.error("❌ %s", exc)

    def results(self) -> list[CheckResult]:
        return list(self._results.values())


def _row(sg) -> dict:
    b = sg.basis
    return {
        "a2": b.a2, "a3": b.a3, "c2": b.c2, "c1": b.c1,
        "n": sg.n, "p": sg.p, "q": sg.q, "y": sg.first_break.y,
    }


def node_select_bases(state: GraphState) -> dict:
    """
    节点1: 选出待验证的基
    2 <= a2 <= a2_max，a2 < a3 < a2²
    """
    bases = [(a2, a3) for a2 in range(2, state.a2_max + 1) for a3 in a3_range(a2)]
    logger.info("待验证的基: %d 个 (a2 <= %d)", len(bases), state.a2_max)
    return {"bases": bases, "current_node": "select_bases"}


def node_series(state: GraphState) -> dict:
    """
    节点2: 步长生成器系列
    - 系列形状、L1/L6/L9/L10/L12
    - 非规范：q > p+1，q >= 4，T1 (n + q <= a2)，严格性单独计数
    """
    tally = _Tally()
    records: list[SweepRecord] = []
    rows: list[dict] = []

    for a2, a3 in state.bases:
        basis = Basis.of(a2, a3)
        try:
            series = enumerate_sgs(basis, GenerationTable(basis))
            check_series(series)
            tally.record("series", True)
            rows.append(_row(series[0]))
            for sg in series:
                for name, ok in lemma_checks(sg).items():
                    tally.record(name, ok, basis, sg.label())
                if sg.canonical:
                    continue
                check_noncanonical(sg)
                tally.record("T1", True)
                records.append(SweepRecord.of(sg))
        except ContractViolation as exc:
            tally.violation(exc)

    summary = sweep_summary(records)
    tally.record(
        "T1-strict",
        summary.all_strict,
        Basis.of(summary.worst.a2, summary.worst.a3) if summary.worst and not summary.all_strict else None,
        f"严格 {summary.strict}/{summary.total}",
    )
    logger.info("系列检查完成: %d 个非规范步长生成器，严格 %d", summary.total, summary.strict)
    return {
        "checks": tally.results(),
        "summary": summary,
        "fundamental_rows": rows,
        "current_node": "series",
    }


def node_staircase(state: GraphState) -> dict:
    """
    节点3: 阶梯构造
    - 构造得到的基本步长生成器 == enumerate_sgs 的第一项
    - A1/D1 的闭式关系
    - 非规范、p >= 2 的基本步长生成器：C2 < a2/(p(p+1)) + 1
    - 其中上升且 C2 = 1 的：a2 > p²
    """
    tally = _Tally()
    for a2, a3 in state.bases:
        basis = Basis.of(a2, a3)
        try:
            staircase = build_staircase(basis)
            head = enumerate_sgs(basis)[0]
            sg = staircase.sg
            tally.record("fundamental==series[0]", sg == head, basis, f"构造 {sg.label()}，枚举 {head.label()}")

            for name, ok in closed_form_checks(staircase).items():
                tally.record(f"{staircase.cls.branch}-{name}", ok, basis, f"{staircase.cls.tag}, {sg.label()}")

            p = sg.p
            if not sg.canonical and p >= 2:
                tally.record(
                    "C2-bound",
                    Fraction(basis.c2) < Fraction(a2, p * (p + 1)) + 1,
                    basis,
                    f"C2={basis.c2}, p={p}",
                )
                if staircase.cls.branch == "ascending" and basis.c2 == 1:
                    tally.record("a2>p^2", a2 > p * p, basis, f"p={p}")
        except ContractViolation as exc:
            tally.violation(exc)
    return {"checks": tally.results(), "current_node": "staircase"}


def node_filters(state: GraphState) -> dict:
    """节点4: 过滤表达式作用在基本步长生成器行上"""
    results = []
    for text in state.filters:
        predicate = parse_filter(text)
        rows = [r for r in state.fundamental_rows if predicate(r)]
        logger.info("过滤 %s: %d 行", predicate, len(rows))
        results.append(FilterResult(expression=str(predicate), rows=rows))
    return {"filter_results": results, "current_node": "filters"}


def node_hrange(state: GraphState) -> dict:
    """
    节点5: h-range 定理（窗口 [h0, h0 + h_window]）
    - T2：底层步长生成器规范，且等于系列的规范终结者
    - T3：X(h+1) = X(h) + a3
    - T4：间隙集平移
    - 推论：h1 <= h0，h2 <= h0；h0 与闭式一致
    """
    tally = _Tally()
    window = state.h_window
    for a2, a3 in state.bases:
        if a2 > state.hrange_a2_max:
            break
        basis = Basis.of(a2, a3)
        try:
            profile = h_profile(basis, window)
            h0 = profile.h0
            tally.record("h0-closed-form", h0 == h_zero_closed_form(basis), basis, f"h0={h0}")
            tally.record("h1<=h0", profile.h1 <= h0, basis, f"h1={profile.h1}, h0={h0}")
            tally.record("h2<=h0", profile.h2 <= h0, basis, f"h2={profile.h2}, h0={h0}")

            table = HRangeTable(basis, h0 + window + 1)
            terminator = enumerate_sgs(basis)[-1]
            for h in range(h0, h0 + window + 1):
                xs = profile.x_values
                tally.record("T3", xs[h + 1] == xs[h] + a3, basis, f"h={h}")
                tally.record("T4", table.shift_holds(h), basis, f"h={h}")

                under = underlying_sg(basis, h, table)
                tally.record("T2", under.sg == terminator, basis, f"h={h}: {under.sg.label()} ≠ {terminator.label()}")
                tally.record(
                    "potential==X",
                    potential_h_range(under.sg, h) == xs[h],
                    basis,
                    f"h={h}",
                )
        except ContractViolation as exc:
            tally.violation(exc)
    return {"checks": tally.results(), "current_node": "hrange"}


def node_families(state: GraphState) -> dict:
    """节点6: 参数族"""
    tally = _Tally()
    flagged = []
    for outcome in family_checks(state.family_t_max, state.family_keys or None):
        if outcome.flagged:
            flagged.append(outcome)
            continue
        basis = Basis.of(*outcome.basis[1:])
        tally.record(
            f"family {outcome.family}",
            outcome.passed,
            basis,
            f"t={outcome.t}: 期望 {outcome.expected}，实际 {outcome.found}",
        )
    return {"checks": tally.results(), "flagged_families": flagged, "current_node": "families"}


# 具名例子：(基, 期望的 (n, p, q) 出现在系列中)
NAMED_NONCANONICAL: list[tuple[tuple[int, int], int, int | None, int]] = [
    ((93, 104), 6, 24, 41),
    ((65, 98), 19, 28, 30),
    ((11, 14), 3, 3, 6),
    ((14, 33), 8, 2, 4),
    ((16, 38), None, 2, 4),
    ((18, 43), None, 2, 4),
]
NAMED_CANONICAL: list[tuple[int, int]] = [(10, 23), (11, 25), (12, 28), (11, 28)]


def node_examples(state: GraphState) -> dict:
    """节点7: 具名例子"""
    tally = _Tally()

    series = enumerate_sgs(Basis.of(38, 97))
    got = [(sg.n, sg.p) for sg in series]
    tally.record("example {1,38,97}", got == [(19, 2), (15, 4), (14, 6)], Basis.of(38, 97), f"系列 {got}")

    for (a2, a3), n, p, q in NAMED_NONCANONICAL:
        basis = Basis.of(a2, a3)
        found = [
            sg for sg in enumerate_sgs(basis)
            if not sg.canonical and sg.q == q and n in (None, sg.n) and p in (None, sg.p)
        ]
        tally.record(f"example {basis}", bool(found), basis, f"期望 n={n}, p={p}, q={q}")

    for a2, a3 in NAMED_CANONICAL:
        basis = Basis.of(a2, a3)
        sg = build_staircase(basis).sg
        tally.record(f"example {basis}", sg.canonical, basis, f"{sg.label()} 应当规范")
    return {"checks": tally.results(), "current_node": "examples"}


def node_report(state: GraphState) -> dict:
    """节点8: 汇总报告"""
    report = VerificationReport(
        a2_max=state.a2_max,
        h_window=state.h_window,
        hrange_a2_max=state.hrange_a2_max,
        checks=state.checks,
        filters=state.filter_results,
        summary=state.summary,
        flagged=state.flagged_families,
    )
    if report.passed:
        logger.info("✅ 全部 %d 项检查通过", len(report.checks))
    else:
        logger.error("❌ %d 项检查失败", len(report.failures))
    return {"report": report, "current_node": "report"}
