"""
线程图渲染：文本与 SVG

文本格式（最高阶在上）：
    i=<阶> |<a3 个格子>      '#' 被该阶某个线程覆盖，'.' 为空
    最后一行是坐标轴，断点列标 '^'
"""
from __future__ import annotations

from pydantic import BaseModel

from core.basis import Basis
from core.stride import GenerationTable, ThreadDiagram, generation_order_bound, thread_diagram
from utils.errors import PreconditionError


class RenderedDiagram(BaseModel):
    lines: list[str]

    def text(self) -> str:
        return "\n".join(self.lines) + "\n"


def default_max_order(basis: Basis, n: int) -> int:
    return min(basis.a2 - 1, generation_order_bound(basis, n))


def break_columns(basis: Basis, n: int) -> list[int]:
    """n 处若有步长生成器，返回其断点；否则为空"""
    table = GenerationTable(basis)
    if n > table.n_max:
        return []
    sg = table.stride_generator_at(n)
    return [] if sg is None else [b.y for b in sg.breaks]


class DiagramRenderer:
    """线程图渲染器"""

    CELL = 6
    ROW = 14

    def _diagram(self, basis: Basis, n: int, max_order: int | None) -> ThreadDiagram:
        if n < 1:
            raise PreconditionError(f"n 必须 >= 1 (got {n})")
        top = default_max_order(basis, n) if max_order is None else max_order
        return thread_diagram(basis, n, top)

    def render_text(self, basis: Basis, n: int, max_order: int | None = None) -> RenderedDiagram:
        diagram = self._diagram(basis, n, max_order)
        a3 = basis.a3
        lines = []
        for order in range(diagram.max_order, -1, -1):
            cells = ["."] * a3
            for t in diagram.by_order(order):
                for x in range(max(t.start, 0), min(t.end, a3 - 1) + 1):
                    cells[x] = "#"
            lines.append(f"i={order} |" + "".join(cells))

        axis = [" "] * a3
        for y in break_columns(basis, n):
            axis[y] = "^"
        pad = len(f"i={diagram.max_order} |")
        lines.append(" " * pad + "".join(axis).rstrip())
        return RenderedDiagram(lines=lines)

    def render_thread_list(self, basis: Basis, n: int, max_order: int | None = None) -> list[str]:
        diagram = self._diagram(basis, n, max_order)
        return [
            f"{t.thread} str={t.start} end={t.end} len={t.length}"
            for t in diagram.threads
        ]

    def render_svg(self, basis: Basis, n: int, max_order: int | None = None) -> str:
        """每个线程一条横线，高度 = 阶；断点画竖虚线"""
        diagram = self._diagram(basis, n, max_order)
        a3, cell, row = basis.a3, self.CELL, self.ROW
        width = (a3 + 2) * cell
        height = (diagram.max_order + 2) * row

        def y_of(order: int) -> int:
            return (diagram.max_order - order + 1) * row

        parts = [
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
            f'viewBox="0 0 {width} {height}">',
            f'<title>{basis} n={n}</title>',
            f'<rect x="{cell}" y="0" width="{a3 * cell}" height="{height}" fill="none" stroke="#cccccc"/>',
        ]
        for t in diagram.threads:
            x1 = (max(t.start, 0) + 1) * cell
            x2 = (min(t.end, a3 - 1) + 2) * cell
            parts.append(
                f'<line x1="{x1}" y1="{y_of(t.order)}" x2="{x2}" y2="{y_of(t.order)}" '
                f'stroke="#1f77b4" stroke-width="3"><title>{t.thread}</title></line>'
            )
        for y in break_columns(basis, n):
            x = (y + 2) * cell
            parts.append(f'<line x1="{x}" y1="0" x2="{x}" y2="{height}" stroke="#d62728" stroke-dasharray="3,3"/>')
        parts.append("</svg>")
        return "\n".join(parts) + "\n"


# 全局实例
diagram_renderer = DiagramRenderer()
