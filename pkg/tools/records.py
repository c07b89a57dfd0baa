"""
扫描记录的写出端：JSONL（默认）或 CSV

写到目标目录下的临时文件，成功后 os.replace 到位；
中途出错则删除临时文件，不留半截输出。
"""
from __future__ import annotations

import csv
import os
import sys
import tempfile
from contextlib import contextmanager
from typing import IO, Iterator, Literal

from analysis.sweep import RecordSink, SweepRecord

RecordFormat = Literal["jsonl", "csv"]

CSV_HEADER = ["a2", "a3", "c2", "c1", "n", "p", "q", "y"]


def _make_sink(stream: IO[str], fmt: RecordFormat) -> RecordSink:
    if fmt == "csv":
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(CSV_HEADER)

        def emit_csv(record: SweepRecord) -> None:
            writer.writerow([getattr(record, k) for k in CSV_HEADER])

        return emit_csv

    def emit_jsonl(record: SweepRecord) -> None:
        stream.write(record.model_dump_json() + "\n")

    return emit_jsonl


@contextmanager
def record_sink(path: str | None, fmt: RecordFormat = "jsonl") -> Iterator[RecordSink]:
    """path 为 None 时写 stdout"""
    if path is None:
        yield _make_sink(sys.stdout, fmt)
        sys.stdout.flush()
        return

    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(prefix=".partial-", suffix=f".{fmt}", dir=directory)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as stream:
            yield _make_sink(stream, fmt)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.remove(tmp)
        raise
