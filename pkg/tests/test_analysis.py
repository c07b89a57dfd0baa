"""
底层步长生成器、极值基、扫描、过滤表达式与参数族
"""
import json

import pytest
from hypothesis import given, settings, strategies as st

from analysis.extremal import extremal_basis, two_stamp_range
from analysis.families import FAMILIES, check_family_member, family_checks
from analysis.filters import parse_filter
from analysis.oracle import oracle_sweep_count
from analysis.sweep import SweepRecord, a3_range, iter_sweep, sweep_noncanonical, sweep_summary
from analysis.underlying import potential_h_range, underlying_sg
from conftest import bases
from core.basis import Basis
from core.hrange import h_range, h_zero
from core.stride import enumerate_sgs, is_stride_generator
from utils.errors import PreconditionError, UsageError


class TestUnderlying:
    def test_named_terminator(self, b_38_97):
        results = [underlying_sg(b_38_97, h) for h in range(38, 41)]
        assert all((r.sg.n, r.sg.p) == (14, 6) for r in results)
        assert all(r.sg.canonical for r in results)
        assert [r.k for r in results] == [24, 25, 26]

    def test_below_h0_rejected(self, b_38_97):
        with pytest.raises(PreconditionError):
            underlying_sg(b_38_97, 10)

    @settings(max_examples=50, deadline=None)
    @given(bases(12), st.integers(0, 3))
    def test_potential_equals_x(self, basis, offset):
        h = h_zero(basis) + offset
        result = underlying_sg(basis, h)
        assert potential_h_range(result.sg, h) == h_range(basis, h)
        assert result.sg == enumerate_sgs(basis)[-1]
        assert result.sg.n == h - result.k

    def test_potential_at_h_equal_n(self, b_38_97):
        sg = is_stride_generator(b_38_97, 19)
        assert potential_h_range(sg, 19) == 97 + sg.first_break.y - 1
        assert potential_h_range(sg, 21) == 3 * 97 + sg.first_break.y - 1

    def test_potential_precondition(self, b_38_97):
        with pytest.raises(PreconditionError):
            potential_h_range(is_stride_generator(b_38_97, 19), 18)


class TestExtremal:
    def test_two_stamp_range(self):
        assert two_stamp_range(2, 2) == 4
        assert two_stamp_range(3, 2) == 4

    def test_h2_matches_brute_force(self):
        best = None
        for a2 in range(2, 11):
            for a3 in range(a2 + 1, a2 * a2 + 1):
                x = h_range(Basis.of(a2, a3), 2)
                if best is None or x > best[1]:
                    best = ((a2, a3), x)
        result = extremal_basis(2, 10)
        assert ((result.basis.a2, result.basis.a3), result.x) == best
        assert (result.basis.key, result.x) == ((1, 3, 4), 8)

    def test_monotone_in_h(self):
        assert extremal_basis(3, 8).x >= extremal_basis(2, 8).x + 1

    def test_precondition(self):
        with pytest.raises(PreconditionError):
            extremal_basis(1, 10)


class TestSweep:
    def test_nothing_below_five(self):
        assert sweep_noncanonical(4, lambda r: None) == 0
        assert sweep_noncanonical(2, lambda r: None) == 0

    def test_precondition(self):
        with pytest.raises(PreconditionError):
            sweep_noncanonical(1, lambda r: None)

    def test_a3_range(self):
        assert list(a3_range(3)) == [4, 5, 6, 7, 8]
        assert list(a3_range(3, include_degenerate=True))[-1] == 18

    def test_count_matches_oracle(self):
        records = []
        count = sweep_noncanonical(10, records.append)
        assert count == len(records) == oracle_sweep_count(10)
        assert count > 0

    def test_records_sorted_and_bounded(self):
        records = list(iter_sweep(14))
        keys = [(r.a2, r.a3, -r.n) for r in records]
        assert keys == sorted(keys)
        for r in records:
            assert r.q > r.p + 1
            assert r.q >= 4
            assert r.n + r.q < r.a2
            assert r.a3 == r.c2 * r.a2 + r.c1

    def test_small_basis_record(self):
        records = [r for r in iter_sweep(8) if (r.a2, r.a3) == (8, 11)]
        assert SweepRecord(a2=8, a3=11, c2=1, c1=3, n=3, p=2, q=4, y=4) in records

    def test_parallel_output_identical(self):
        serial = [r.model_dump_json() for r in iter_sweep(11, jobs=1)]
        parallel = [r.model_dump_json() for r in iter_sweep(11, jobs=3)]
        assert serial == parallel

    def test_degenerate_range_extends_plain_range(self):
        plain = {r.model_dump_json() for r in iter_sweep(7)}
        wide = list(iter_sweep(7, include_degenerate=True))
        assert plain <= {r.model_dump_json() for r in wide}
        for r in wide:
            if r.model_dump_json() not in plain:
                assert r.a3 >= r.a2 * r.a2

    def test_summary(self):
        summary = sweep_summary(iter_sweep(12))
        assert summary.total > 0
        assert summary.all_strict
        assert summary.min_q >= 4
        assert summary.worst is not None
        assert summary.ratio(summary.worst) < 1
        records = list(iter_sweep(12))
        assert summary.top_c2 == max(r.c2 for r in records)
        assert summary.max_c2[8] == max(r.c2 for r in records if r.a2 == 8)

    def test_jsonl_shape(self):
        record = next(iter(iter_sweep(8)))
        assert list(json.loads(record.model_dump_json())) == ["a2", "a3", "c2", "c1", "n", "p", "q", "y"]


class TestFilters:
    ROW = {"a2": 14, "a3": 33, "c2": 2, "c1": 5, "n": 8, "p": 2, "q": 4, "y": 22}

    @pytest.mark.parametrize(
        "text,expected",
        [
            ("c2=2,c1<a2/2,p=2", True),
            ("c2=1", False),
            ("c1>a2/3", True),
            ("c1>=a2/2", False),
            ("q<=4,n!=7", True),
            ("y>a3", False),
            ("a3>=a2", True),
        ],
    )
    def test_evaluate(self, text, expected):
        assert parse_filter(text)(self.ROW) is expected

    def test_missing_q_never_matches(self):
        row = dict(self.ROW, q=None)
        assert not parse_filter("q>0")(row)
        assert not parse_filter("q<100")(row)

    def test_round_trip_text(self):
        assert str(parse_filter("c2=1, c1<a2/2 ,p=2")) == "c2=1,c1<a2/2,p=2"

    @pytest.mark.parametrize("text", ["", "c3=1", "c2==1", "c2=a9", "c2=a2/0", "p=2/3", "c2"])
    def test_rejects(self, text):
        with pytest.raises(UsageError):
            parse_filter(text)


class TestFamilies:
    @pytest.mark.parametrize("key", sorted(FAMILIES))
    def test_small_members(self, key):
        spec = FAMILIES[key]
        for t in range(spec.t_min, spec.t_min + 4):
            outcome = check_family_member(spec, t)
            assert outcome.passed, outcome

    def test_three_t_plus_two_first_member(self):
        outcome = check_family_member(FAMILIES["3t+2"], 2)
        assert outcome.basis == (1, 8, 11)
        assert outcome.found == "n=3, p=2, q=4"

    def test_selected_keys(self):
        outcomes = family_checks(5, ["2t+1"])
        assert {o.family for o in outcomes} == {"2t+1"}
        assert [o.t for o in outcomes] == [1, 2, 3, 4, 5]

    @pytest.mark.parametrize(
        "key,low",
        [("3t+2", [1]), ("4t+1", [1]), ("2t+1", [1, 2, 3]), ("16t+11", []), ("18t+11", [])],
    )
    def test_low_members_are_flagged_not_failed(self, key, low):
        outcomes = family_checks(FAMILIES[key].t_min + 1, [key])
        assert outcomes[0].t == min(1, FAMILIES[key].t_min)
        assert [o.t for o in outcomes if o.flagged] == low
        assert all(o.passed for o in outcomes if not o.flagged)

    def test_flagged_member_keeps_what_was_found(self):
        (outcome,) = [o for o in family_checks(2, ["3t+2"]) if o.t == 1]
        assert outcome.basis == (1, 5, 8)
        assert outcome.flagged and not outcome.passed
        assert outcome.found is not None

    def test_unknown_key(self):
        with pytest.raises(UsageError):
            family_checks(5, ["nope"])
