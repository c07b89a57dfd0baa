"""
stridelab CLI 入口
{1, a2, a3} 邮票问题的步长生成器实验台

退出码：0 通过，1 不变式/交叉校验失败，2 用法错误
stdout 只输出数据，日志与汇总走 stderr
"""
import functools
import json
from concurrent.futures.process import BrokenProcessPool
from typing import List, Optional

import typer

from config import config
from analysis.extremal import extremal_basis
from analysis.sweep import sweep_noncanonical, sweep_summary
from analysis.verify import verify_theorems
from core.basis import Basis
from core.hrange import h_profile, h_range, hrange_report
from core.staircase import (
    build_staircase,
    closed_form_checks,
    covered_thread_witness,
    minimal_threads,
    overlay_threads,
    qmax_bound,
)
from core.stride import enumerate_sgs
from tools.diagram import diagram_renderer
from tools.records import record_sink
from utils.errors import ContractViolation, UsageError
from utils.log import err_console, get_logger, setup_logging

app = typer.Typer(help="stridelab - {1, a2, a3} 的 h-range 与步长生成器", add_completion=False)
logger = get_logger("cli")

BasisOpt = typer.Option(..., "--basis", help='基，格式 "1,a2,a3"')


def handle_errors(fn):
    """把异常映射成退出码"""

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except UsageError as exc:
            err_console.print(f"[red]❌ {exc}[/red]")
            raise typer.Exit(code=2)
        except ContractViolation as exc:
            err_console.print(f"[red]❌ 检查失败 {exc}[/red]")
            raise typer.Exit(code=1)
        except BrokenProcessPool as exc:
            err_console.print(f"[red]❌ 工作进程异常退出: {exc}[/red]")
            raise typer.Exit(code=1)

    return wrapper


def _echo_json(payload) -> None:
    typer.echo(json.dumps(payload, ensure_ascii=False))


@app.callback()
def main(
    log_level: Optional[str] = typer.Option(None, "--log-level", help="覆盖 STRIDELAB_LOG_LEVEL"),
):
    """验证配置并初始化日志"""
    errors = config.validate()
    if errors:
        for err in errors:
            err_console.print(err)
        raise typer.Exit(code=2)
    setup_logging(log_level.upper() if log_level else None)


@app.command()
@handle_errors
def hrange(
    basis: str = BasisOpt,
    h: Optional[int] = typer.Option(None, "--h", help="缺省为 h0"),
    window: int = typer.Option(config.h_window, "--window", help="h1/h2 的验证窗口"),
    stats: bool = typer.Option(False, "--stats", help="同时输出窗口内每个 X(h)"),
    as_json: bool = typer.Option(False, "--json"),
):
    """X(h)、h0、h1、h2 与可容许性"""
    b = Basis.parse(basis)
    if window < 0:
        raise UsageError(f"--window 必须 >= 0 (got {window})")
    profile = h_profile(b, window)
    h = profile.h0 if h is None else h
    if h < 1:
        raise UsageError(f"--h 必须 >= 1 (got {h})")
    x = h_range(b, h)

    payload = {
        "a2": b.a2, "a3": b.a3, "h": h, "X": x,
        "h0": profile.h0, "h1": profile.h1, "h2": profile.h2, "window": window,
    }
    if as_json:
        if stats:
            payload["stats"] = hrange_report(b, window)
        _echo_json(payload)
        return

    typer.echo(f"basis={b}")
    for key in ("h", "X", "h0", "h1", "h2", "window"):
        typer.echo(f"{key}={payload[key]}")
    typer.echo(f"admissible={'yes' if x >= b.a3 else 'no'}")
    if stats:
        for hh, xx in profile.x_values.items():
            typer.echo(f"X({hh})={xx}")


@app.command()
@handle_errors
def strides(basis: str = BasisOpt, as_json: bool = typer.Option(False, "--json")):
    """步长生成器系列（n 降序）"""
    b = Basis.parse(basis)
    series = enumerate_sgs(b)
    if as_json:
        _echo_json([sg.model_dump(mode="json") for sg in series])
        return
    for sg in series:
        kind = "canonical" if sg.canonical else "noncanonical"
        q = "-" if sg.q is None else sg.q
        ys = ",".join(str(br.y) for br in sg.breaks)
        typer.echo(f"n={sg.n} p={sg.p} {kind} q={q} breaks={ys}")
    err_console.print(f"{b}: {len(series)} 个步长生成器")


@app.command()
@handle_errors
def diagram(
    basis: str = BasisOpt,
    n: int = typer.Option(..., "--n"),
    max_order: Optional[int] = typer.Option(None, "--max-order", help="缺省 min(a2−1, 阶上界)"),
    fmt: str = typer.Option("text", "--format", help="text 或 svg"),
    list_threads: bool = typer.Option(False, "--list", help="额外列出每个线程"),
):
    """线程图"""
    b = Basis.parse(basis)
    if n < 1:
        raise UsageError(f"--n 必须 >= 1 (got {n})")
    if max_order is not None and max_order < 0:
        raise UsageError(f"--max-order 必须 >= 0 (got {max_order})")
    if fmt not in ("text", "svg"):
        raise UsageError(f"--format 只能是 text 或 svg (got {fmt!r})")

    if fmt == "svg":
        typer.echo(diagram_renderer.render_svg(b, n, max_order), nl=False)
    else:
        typer.echo(diagram_renderer.render_text(b, n, max_order).text(), nl=False)
    if list_threads:
        for line in diagram_renderer.render_thread_list(b, n, max_order):
            typer.echo(line)


@app.command()
@handle_errors
def sweep(
    a2_max: int = typer.Option(..., "--a2-max"),
    out: Optional[str] = typer.Option(None, "--out", help="缺省写 stdout"),
    jobs: int = typer.Option(config.jobs, "--jobs", help="并行进程数（STRIDELAB_JOBS）"),
    as_csv: bool = typer.Option(False, "--csv", help="输出 CSV 平表"),
    include_degenerate: bool = typer.Option(config.include_degenerate, "--include-degenerate"),
):
    """扫描所有非规范步长生成器"""
    if jobs < 1:
        raise UsageError(f"--jobs 必须 >= 1 (got {jobs})")
    records = []

    with record_sink(out, "csv" if as_csv else "jsonl") as emit:

        def tee(record):
            records.append(record)
            emit(record)

        count = sweep_noncanonical(a2_max, tee, jobs=jobs, include_degenerate=include_degenerate)

    summary = sweep_summary(records)
    err_console.print(
        f"✅ a2 <= {a2_max}: {count} 个非规范步长生成器"
        f"（严格 n+q<a2: {summary.strict}，最小 q: {summary.min_q}）"
    )
    if summary.max_c2:
        per_a2 = " ".join(f"{a2}:{c2}" for a2, c2 in sorted(summary.max_c2.items()))
        err_console.print(f"最大 C2: {summary.top_c2}")
        logger.info("各 a2 的最大 C2: %s", per_a2)


@app.command()
@handle_errors
def verify(
    a2_max: int = typer.Option(12, "--a2-max"),
    h_window: int = typer.Option(config.h_window, "--h-window"),
    hrange_a2_max: Optional[int] = typer.Option(None, "--hrange-a2-max", help="缺省 min(a2_max, 30)"),
    filters: List[str] = typer.Option([], "--filter", help='例如 "c2=2,c1<a2/2,p=2"'),
    families: List[str] = typer.Option([], "--family", help="例如 3t+2"),
    family_t_max: Optional[int] = typer.Option(None, "--family-t-max"),
    examples: bool = typer.Option(True, "--examples/--no-examples"),
    as_json: bool = typer.Option(False, "--json"),
):
    """引理/定理的经验验证"""
    report = verify_theorems(
        a2_max,
        h_window=h_window,
        filters=filters,
        families=families,
        family_t_max=family_t_max,
        hrange_a2_max=hrange_a2_max,
        include_examples=examples,
    )

    if as_json:
        _echo_json(report.model_dump(mode="json"))
    else:
        for check in report.checks:
            mark = "PASS" if check.passed else "FAIL"
            line = f"{mark} {check.name} cases={check.cases}"
            if not check.passed:
                line += f" failures={check.failures} basis={check.counterexample} {check.detail}"
            typer.echo(line)
        for row in report.flagged:
            typer.echo(f"FLAG family {row.family} t={row.t} basis={row.basis} expected {row.expected} found {row.found}")
        for result in report.filters:
            typer.echo(f"filter {result.expression}: {len(result.rows)} rows")
            for row in result.rows:
                typer.echo("  " + " ".join(f"{k}={'-' if v is None else v}" for k, v in row.items()))

    if not report.passed:
        for check in report.failures:
            err_console.print(f"[red]❌ {check.name}: {check.counterexample} {check.detail}[/red]")
        raise typer.Exit(code=1)
    err_console.print(f"✅ {len(report.checks)} 项检查全部通过")


@app.command()
@handle_errors
def classify(basis: str = BasisOpt):
    """基本步长生成器的阶梯分类；C2 = 1 时给出覆盖线程"""
    b = Basis.parse(basis)
    staircase = build_staircase(b)
    sg, cls = staircase.sg, staircase.cls
    typer.echo(f"basis={b} C2={b.c2} C1={b.c1}")
    typer.echo(f"class={cls.tag}" + (f" branch={cls.branch}" if cls.branch else ""))
    q = "-" if sg.q is None else sg.q
    typer.echo(f"fundamental n={sg.n} p={sg.p} {'canonical' if sg.canonical else 'noncanonical'} q={q}")

    for name, ok in closed_form_checks(staircase).items():
        typer.echo(f"{name}={'ok' if ok else 'FAIL'}")

    if b.c2 >= 2:
        if cls.may_be_noncanonical:
            typer.echo(f"qmax<{qmax_bound(b, sg.n, sg.p, cls.branch)}")
        return
    if sg.p < 2 or not cls.may_be_noncanonical:
        return

    for rec in overlay_threads(b):
        typer.echo(f"S{rec.index} {rec.thread} ord={rec.order} str={rec.start} len={rec.length}")
    if not sg.canonical:
        witness = covered_thread_witness(b)
        typer.echo(f"witness case={witness.case} m={witness.m} S{witness.thread.index} {witness.thread.thread}")
    for group, minimal in minimal_threads(b):
        typer.echo(f"M{minimal.index} ord={minimal.order} str={minimal.start} group={len(group)}")


@app.command()
@handle_errors
def extremal(
    h: int = typer.Option(..., "--h"),
    a2_max: int = typer.Option(..., "--a2-max"),
):
    """固定 h 的极值基"""
    result = extremal_basis(h, a2_max)
    typer.echo(f"basis={result.basis} X={result.x}")


if __name__ == "__main__":
    app()
