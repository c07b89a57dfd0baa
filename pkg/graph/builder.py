"""
LangGraph 图构建器
组装定理验证流程
"""
from langgraph.graph import StateGraph, END

from graph.state import GraphState
from graph.nodes import (
    node_select_bases,
    node_series,
    node_staircase,
    node_filters,
    node_hrange,
    node_families,
    node_examples,
    node_report,
)
from graph.edges import route_next_stage

# 每个可选阶段之后都走同一个路由
_STAGE_TARGETS = {
    "filters": "filters",
    "hrange": "hrange",
    "families": "families",
    "examples": "examples",
    "report": "report",
}


def build_graph() -> StateGraph:
    """
    构建验证工作流图

    流程:
    START -> select_bases -> series -> staircase
          -> [可选] filters -> [可选] hrange -> [可选] families -> [可选] examples
          -> report -> END
    """
    workflow = StateGraph(GraphState)

    # 添加节点
    workflow.add_node("select_bases", node_select_bases)
    workflow.add_node("series", node_series)
    workflow.add_node("staircase", node_staircase)
    workflow.add_node("filters", node_filters)
    workflow.add_node("hrange", node_hrange)
    workflow.add_node("families", node_families)
    workflow.add_node("examples", node_examples)
    workflow.add_node("report", node_report)

    # 设置入口
    workflow.set_entry_point("select_bases")

    workflow.add_edge("select_bases", "series")
    workflow.add_edge("series", "staircase")

    # 可选阶段：跳过未启用的
    for source in ("staircase", "filters", "hrange", "families", "examples"):
        targets = {k: v for k, v in _STAGE_TARGETS.items() if k != source}
        workflow.add_conditional_edges(source, route_next_stage, targets)

    workflow.add_edge("report", END)

    return workflow


def get_compiled_graph():
    """获取编译后的图"""
    workflow = build_graph()
    return workflow.compile()


# 可视化图结构（调试用）
if __name__ == "__main__":
    graph = get_compiled_graph()

    print("📊 stridelab 验证流程图结构:")
    print(graph.get_graph().draw_ascii())
