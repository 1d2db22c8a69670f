"""Benchmark report container and file emission.

All writes are atomic (write to a temp file in the same directory, then
rename). The report digest covers everything except the timestamp, so two
runs with identical config produce identical digests.
"""

from __future__ import annotations

import csv
import hashlib
import json
import os
import tempfile
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

REPORT_SCHEMA_VERSION = 1


def _atomic_write(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def atomic_write_csv(path, header, rows) -> None:
    buffer = []
    out = csv.writer(_ListWriter(buffer))
    out.writerow(header)
    for row in rows:
        out.writerow(row)
    _atomic_write(Path(path), "".join(buffer))


class _ListWriter:
    def __init__(self, sink):
        self.sink = sink

    def write(self, text):
        self.sink.append(text)


@dataclass
class BenchReport:
    model_ids: list
    dataset_names: list
    rmse: np.ndarray  # models x datasets
    ranks: np.ndarray
    normalized_mean_rank: np.ndarray
    interp_scores: dict = field(default_factory=dict)  # model id -> score (may be empty)
    pareto: dict = field(default_factory=dict)  # model id -> bool
    failures: list = field(default_factory=list)  # (model, dataset, reason)
    seed: int = 0
    timestamp: str = ""
    config_digest: str = ""

    def to_dict(self) -> dict:
        doc = {
            "schema_version": REPORT_SCHEMA_VERSION,
            "model_ids": list(self.model_ids),
            "dataset_names": list(self.dataset_names),
            "rmse": [[None if not np.isfinite(v) else float(v) for v in row] for row in self.rmse],
            "ranks": self.ranks.tolist(),
            "normalized_mean_rank": self.normalized_mean_rank.tolist(),
            "interp_scores": self.interp_scores,
            "pareto": self.pareto,
            "failures": [list(f) for f in self.failures],
            "seed": self.seed,
            "config_digest": self.config_digest,
            "timestamp": self.timestamp,
        }
        doc["report_digest"] = report_digest(doc)
        return doc


def report_digest(doc: dict) -> str:
    """Digest of the report content, excluding the timestamp."""
    trimmed = {k: v for k, v in doc.items() if k not in ("timestamp", "report_digest")}
    return hashlib.sha256(json.dumps(trimmed, sort_keys=True).encode("utf-8")).hexdigest()


def emit_report(report: BenchReport, out_dir, grades: list | None = None, families: dict | None = None) -> dict:
    """Write report.json plus the rank / interp / grade / scatter CSVs.

    Returns a map of artifact name -> path. The scatter CSV carries one row
    per model (rank, interp, pareto flag, family) for external plotting.
    """
    out = Path(out_dir)
    paths = {}

    doc = report.to_dict()
    paths["report"] = out / "report.json"
    _atomic_write(paths["report"], json.dumps(doc, indent=1, sort_keys=True) + "\n")

    paths["ranks"] = out / "ranks.csv"
    rows = [
        [mid] + [repr(float(v)) for v in report.rmse[i]] + [repr(float(report.normalized_mean_rank[i]))]
        for i, mid in enumerate(report.model_ids)
    ]
    atomic_write_csv(paths["ranks"], ["model"] + list(report.dataset_names) + ["normalized_mean_rank"], rows)

    paths["interp"] = out / "interp.csv"
    atomic_write_csv(
        paths["interp"],
        ["model", "interp_score"],
        [[mid, repr(float(score))] for mid, score in sorted(report.interp_scores.items())],
    )

    if grades is not None:
        paths["grades"] = out / "grades.csv"
        atomic_write_csv(
            paths["grades"],
            ["model", "test_id", "category", "split", "pass", "reason", "truth", "parsed"],
            [
                [mid, g.test_id, g.category, g.split, str(g.passed).lower(), g.reason or "", json.dumps(g.truth), json.dumps(g.parsed)]
                for mid, model_grades in sorted(grades)
                for g in model_grades
            ],
        )

    paths["scatter"] = out / "scatter.csv"
    atomic_write_csv(
        paths["scatter"],
        ["model", "normalized_mean_rank", "interp_score", "pareto", "family"],
        [
            [
                mid,
                repr(float(report.normalized_mean_rank[i])),
                repr(float(report.interp_scores.get(mid, float("nan")))),
                str(bool(report.pareto.get(mid, False))).lower(),
                (families or {}).get(mid, mid),
            ]
            for i, mid in enumerate(report.model_ids)
        ],
    )
    return paths
