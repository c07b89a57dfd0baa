"""
LangGraph 条件边定义
决定验证流程走向
"""
from typing import Literal

from graph.state import GraphState

Stage = Literal["filters", "hrange", "families", "examples", "report"]

# 可选阶段的固定顺序
_OPTIONAL_STAGES: tuple[Stage, ...] = ("filters", "hrange", "families", "examples")


def _enabled(state: GraphState, stage: Stage) -> bool:
    if stage == "filters":
        return bool(state.filters)
    if stage == "hrange":
        return state.hrange_a2_max >= 2
    if stage == "families":
        return state.family_t_max > 0
    return state.include_examples


def route_next_stage(state: GraphState) -> Stage:
    """
    在当前节点之后，找下一个启用的可选阶段；都没有则去 report
    staircase 之后从头找，其余从自身的下一位开始
    """
    if state.current_node in _OPTIONAL_STAGES:
        rest = _OPTIONAL_STAGES[_OPTIONAL_STAGES.index(state.current_node) + 1:]
    else:
        rest = _OPTIONAL_STAGES
    for stage in rest:
        if _enabled(state, stage):
            return stage
    return "report"
