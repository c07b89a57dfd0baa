"""
共享的 hypothesis 策略与夹具
"""
import pytest
from hypothesis import strategies as st

from core.basis import Basis


def bases(a2_max: int = 10, a2_min: int = 2) -> st.SearchStrategy[Basis]:
    """a2 <= a2_max，a2 < a3 < a2² 的非退化基"""
    return st.integers(a2_min, a2_max).flatmap(
        lambda a2: st.integers(a2 + 1, a2 * a2 - 1).map(lambda a3: Basis.of(a2, a3))
    )


def all_bases(a2_max: int):
    for a2 in range(2, a2_max + 1):
        for a3 in range(a2 + 1, a2 * a2):
            yield Basis.of(a2, a3)


@pytest.fixture
def b_38_97() -> Basis:
    return Basis.of(38, 97)
