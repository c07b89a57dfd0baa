"""
工具集 - 线程图渲染与记录写出
"""
from tools.diagram import diagram_renderer, DiagramRenderer, RenderedDiagram
from tools.records import record_sink, CSV_HEADER

__all__ = [
    "diagram_renderer",
    "DiagramRenderer",
    "RenderedDiagram",
    "record_sink",
    "CSV_HEADER",
]
