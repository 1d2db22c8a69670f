"""Append-only memory CSV for an external search loop.

Each row records a candidate model's name, its one-line idea, and the
metrics it achieved. Appends are serialized through an advisory file lock
so concurrent loop evaluations cannot interleave partial lines.
"""

from __future__ import annotations

import csv
import fcntl
import io
from dataclasses import dataclass
from pathlib import Path

COLUMNS = ("model", "idea", "rmse_mean_rank", "interp_dev_score", "timestamp", "code_digest")


@dataclass
class MetricsRow:
    model: str
    idea: str
    rmse_mean_rank: float
    interp_dev_score: float
    timestamp: str
    code_digest: str

    def as_list(self) -> list:
        return [self.model, self.idea, repr(self.rmse_mean_rank), repr(self.interp_dev_score), self.timestamp, self.code_digest]


def append_memory(path, row: MetricsRow) -> None:
    """Append one row, writing the header exactly once."""
    path = Path(path)
    buffer = io.StringIO()
    writer = csv.writer(buffer)
    with open(path, "a+", encoding="utf-8", newline="") as fh:
        fcntl.flock(fh.fileno(), fcntl.LOCK_EX)
        try:
            fh.seek(0, io.SEEK_END)
            if fh.tell() == 0:
                writer.writerow(COLUMNS)
            writer.writerow(row.as_list())
            fh.write(buffer.getvalue())
            fh.flush()
        finally:
            fcntl.flock(fh.fileno(), fcntl.LOCK_UN)


def read_memory(path) -> list:
    """Parse the memory CSV back into MetricsRow records."""
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if tuple(header) != COLUMNS:
            raise ValueError(f"unexpected memory CSV header: {header}")
        return [
            MetricsRow(r[0], r[1], float(r[2]), float(r[3]), r[4], r[5])
            for r in reader
            if r
        ]
