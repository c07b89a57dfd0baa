"""
LangGraph 核心 - 验证流程的状态、节点、边、图构建
"""
from graph.state import GraphState, CheckResult, FilterResult, VerificationReport
from graph.builder import build_graph, get_compiled_graph

__all__ = [
    # 状态
    "GraphState",
    "CheckResult",
    "FilterResult",
    "VerificationReport",
    # 图
    "build_graph",
    "get_compiled_graph",
]
