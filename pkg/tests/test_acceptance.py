"""
大规模运行，默认跳过（pytest -m slow）
"""
import os

import pytest

from analysis.sweep import check_noncanonical, iter_sweep, sweep_noncanonical, sweep_summary
from analysis.verify import verify_theorems
from conftest import all_bases
from core.staircase import fundamental_sg
from core.stride import GenerationTable, enumerate_sgs, lemma_checks

pytestmark = pytest.mark.slow

JOBS = os.cpu_count() or 1


def test_full_sweep_count():
    assert sweep_noncanonical(138, lambda r: None, jobs=JOBS) == 74541


def test_sweep_count_up_to_60():
    assert sweep_noncanonical(60, lambda r: None, jobs=JOBS) == 4922


def test_strict_bound_up_to_100():
    summary = sweep_summary(iter_sweep(100, jobs=JOBS))
    assert summary.all_strict
    assert summary.min_q == 4


def test_construction_matches_enumeration_up_to_60():
    for basis in all_bases(60):
        assert fundamental_sg(basis) == enumerate_sgs(basis)[0], str(basis)


def test_lemma_suite_up_to_60():
    for basis in all_bases(60):
        for sg in enumerate_sgs(basis, GenerationTable(basis)):
            checks = lemma_checks(sg)
            assert all(checks.values()), (sg.label(), checks)
            if not sg.canonical:
                check_noncanonical(sg)


def test_hrange_theorems_up_to_30():
    report = verify_theorems(30, h_window=4, family_t_max=0, hrange_a2_max=30, include_examples=False)
    names = {c.name for c in report.checks}
    assert {"T2", "T3", "T4", "h1<=h0", "h2<=h0", "h0-closed-form"} <= names
    assert report.passed, [c.model_dump() for c in report.failures]
