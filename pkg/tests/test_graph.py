"""
验证流程：路由、节点与整图运行
"""
import pytest

from analysis.verify import verify_theorems
from graph import CheckResult, GraphState, VerificationReport, build_graph
from graph.edges import route_next_stage
from graph.nodes import node_filters, node_select_bases, node_staircase
from utils.errors import PreconditionError, UsageError


class TestRouting:
    def test_nothing_enabled_goes_to_report(self):
        state = GraphState(current_node="staircase")
        assert route_next_stage(state) == "report"

    def test_first_enabled_stage_after_staircase(self):
        state = GraphState(current_node="staircase", family_t_max=3, include_examples=True)
        assert route_next_stage(state) == "families"

    def test_stage_never_routes_to_itself(self):
        state = GraphState(current_node="filters", filters=["p=2"], hrange_a2_max=5)
        assert route_next_stage(state) == "hrange"
        state = GraphState(current_node="hrange", filters=["p=2"], hrange_a2_max=5)
        assert route_next_stage(state) == "report"

    @pytest.mark.parametrize(
        "node,expected",
        [("staircase", "filters"), ("filters", "hrange"), ("hrange", "families"), ("families", "examples"), ("examples", "report")],
    )
    def test_everything_enabled(self, node, expected):
        state = GraphState(
            current_node=node, filters=["p=2"], hrange_a2_max=4, family_t_max=2, include_examples=True
        )
        assert route_next_stage(state) == expected

    def test_graph_has_all_nodes(self):
        nodes = set(build_graph().nodes)
        assert {"select_bases", "series", "staircase", "filters", "hrange", "families", "examples", "report"} <= nodes


class TestNodes:
    def test_select_bases(self):
        update = node_select_bases(GraphState(a2_max=3))
        assert update["bases"] == [(2, 3), (3, 4), (3, 5), (3, 6), (3, 7), (3, 8)]
        assert update["current_node"] == "select_bases"

    def test_filter_selects_named_rows(self):
        rows = [
            {"a2": 14, "a3": 33, "c2": 2, "c1": 5, "n": 8, "p": 2, "q": 4, "y": 22},
            {"a2": 16, "a3": 38, "c2": 2, "c1": 6, "n": 9, "p": 2, "q": 4, "y": 25},
            {"a2": 18, "a3": 43, "c2": 2, "c1": 7, "n": 10, "p": 2, "q": 4, "y": 28},
            {"a2": 11, "a3": 28, "c2": 2, "c1": 6, "n": 7, "p": 2, "q": None, "y": 3},
            {"a2": 10, "a3": 23, "c2": 2, "c1": 3, "n": 8, "p": 1, "q": None, "y": 2},
        ]
        state = GraphState(filters=["c2=2,c1<a2/2,p=2"], fundamental_rows=rows)
        (result,) = node_filters(state)["filter_results"]
        assert result.expression == "c2=2,c1<a2/2,p=2"
        assert [(r["a2"], r["a3"]) for r in result.rows] == [(14, 33), (16, 38), (18, 43)]
        assert all(r["q"] == 4 for r in result.rows)

    def test_square_bound_only_for_ascending_unit_c2(self):
        # {1,14,17}：下降、p = 4、a2 < p²，不在 a2 > p² 的适用范围内
        checks = {c.name: c for c in node_staircase(GraphState(bases=[(14, 17)]))["checks"]}
        assert "a2>p^2" not in checks
        assert checks["C2-bound"].passed
        assert all(c.passed for c in checks.values()), [c.model_dump() for c in checks.values()]


class TestReport:
    def test_passed_and_failures(self):
        report = VerificationReport(
            a2_max=5,
            h_window=1,
            hrange_a2_max=5,
            checks=[
                CheckResult(name="L1", passed=True, cases=3),
                CheckResult(name="T1", passed=False, cases=2, failures=1, counterexample=(1, 5, 7)),
            ],
        )
        assert not report.passed
        assert [c.name for c in report.failures] == ["T1"]


class TestVerifyTheorems:
    def test_small_run_passes(self):
        report = verify_theorems(8, h_window=2, family_t_max=4, hrange_a2_max=8, include_examples=False)
        names = {c.name for c in report.checks}
        assert {"series", "L1", "L10", "T1", "T1-strict", "T2", "T3", "T4", "fundamental==series[0]"} <= names
        assert "family 3t+2" in names
        assert [(o.family, o.t) for o in report.flagged if o.family == "3t+2"] == [("3t+2", 1)]
        assert report.passed, [c.model_dump() for c in report.failures]
        assert report.summary is not None and report.summary.total > 0

    def test_named_examples(self):
        report = verify_theorems(4, h_window=0, family_t_max=0, hrange_a2_max=0, include_examples=True)
        names = {c.name for c in report.checks}
        assert {"example {1,38,97}", "example {1,93,104}", "example {1,11,28}"} <= names
        assert report.passed, [c.model_dump() for c in report.failures]

    def test_skipped_stages_leave_no_checks(self):
        report = verify_theorems(6, family_t_max=0, hrange_a2_max=0, include_examples=False)
        names = {c.name for c in report.checks}
        assert "T2" not in names
        assert not any(n.startswith("family") for n in names)

    def test_filter_over_fundamental_rows(self):
        report = verify_theorems(
            18, filters=["c2=2,c1<a2/2,p=2"], family_t_max=0, hrange_a2_max=0, include_examples=False
        )
        (result,) = report.filters
        selected = {(r["a2"], r["a3"]) for r in result.rows}
        assert {(14, 33), (16, 38), (18, 43)} <= selected
        assert all(r["c2"] == 2 and r["p"] == 2 for r in result.rows)

    def test_rejects_bad_arguments(self):
        with pytest.raises(PreconditionError):
            verify_theorems(1)
        with pytest.raises(UsageError):
            verify_theorems(6, families=["nope"], family_t_max=2)
        with pytest.raises(UsageError):
            verify_theorems(6, filters=["c9=1"])


@pytest.mark.slow
def test_verify_a2_up_to_40():
    report = verify_theorems(40, h_window=4, family_t_max=6, hrange_a2_max=30)
    assert report.passed, [c.model_dump() for c in report.failures]
