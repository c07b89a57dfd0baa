"""
定理验证入口：组装初始状态，跑一遍 LangGraph 验证流程
"""
from __future__ import annotations

from typing import Any, Dict, Optional

from analysis.families import FAMILIES
from analysis.filters import parse_filter
from config import config
from graph.builder import get_compiled_graph
from graph.state import GraphState, VerificationReport
from utils.errors import PreconditionError, UsageError
from utils.log import get_logger

logger = get_logger("verify")

_GRAPH = None


def get_graph():
    global _GRAPH
    if _GRAPH is None:
        _GRAPH = get_compiled_graph()
    return _GRAPH


def verify_theorems(
    a2_max: int,
    h_window: Optional[int] = None,
    filters: Optional[list[str]] = None,
    families: Optional[list[str]] = None,
    family_t_max: Optional[int] = None,
    hrange_a2_max: Optional[int] = None,
    include_examples: bool = True,
) -> VerificationReport:
    """
    - hrange_a2_max 缺省为 min(a2_max, 30)，0 表示跳过 h-range 定理
    - families 给出时只跑这些族；family_t_max 缺省取配置，0 表示跳过参数族
    """
    if a2_max < 2:
        raise PreconditionError(f"a2_max 必须 >= 2 (got {a2_max})")
    window = config.h_window if h_window is None else h_window
    if window < 0:
        raise PreconditionError(f"h_window 必须 >= 0 (got {window})")
    # 参数在进图之前校验
    unknown = [k for k in families or [] if k not in FAMILIES]
    if unknown:
        raise UsageError(f"未知的参数族 {unknown}，可用: {', '.join(FAMILIES)}")
    for text in filters or []:
        parse_filter(text)

    initial_state = GraphState(
        a2_max=a2_max,
        h_window=window,
        hrange_a2_max=min(a2_max, 30) if hrange_a2_max is None else hrange_a2_max,
        family_keys=families or [],
        family_t_max=config.family_t_max if family_t_max is None else family_t_max,
        filters=filters or [],
        include_examples=include_examples,
    )

    final_state: Dict[str, Any] = {}
    for event in get_graph().stream(initial_state, stream_mode="values"):
        final_state = event
        if config.debug and event.get("current_node"):
            logger.debug("node -> %s", event["current_node"])

    return VerificationReport.model_validate(final_state["report"])
