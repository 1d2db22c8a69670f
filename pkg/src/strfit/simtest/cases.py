"""Test-case and grade records, plus the suite definition file format.

A suite file is a JSON array of test-case records. Categories partition the
suite six ways and every test belongs to the dev or heldout split.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from ..errors import SuiteError
from .generators import GeneratorSpec

CATEGORIES = (
    "feature-attribution",
    "point-simulation",
    "sensitivity",
    "counterfactual",
    "structural",
    "complex-function",
)
ANSWER_KINDS = ("number", "feature-name", "feature-set", "ranking", "boolean", "interval")
TRUTH_SOURCES = ("fitted-model", "true-function")
SPLITS = ("dev", "heldout")


@dataclass
class Tolerance:
    absolute: float = 0.05
    relative: float = 0.10

    def bound(self, truth: float) -> float:
        return max(self.absolute, self.relative * abs(truth))

    def to_dict(self) -> dict:
        return {"absolute": self.absolute, "relative": self.relative}

    @staticmethod
    def from_dict(d: dict) -> "Tolerance":
        return Tolerance(d["absolute"], d["relative"])


@dataclass
class TestCase:
    __test__ = False  # domain type, not a pytest class

    id: str
    category: str
    split: str
    generator: GeneratorSpec
    query_kind: str
    query_template: str
    answer_kind: str
    truth_source: str
    tolerance: Tolerance = field(default_factory=Tolerance)
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.category not in CATEGORIES:
            raise SuiteError(f"{self.id}: unknown category {self.category!r}")
        if self.split not in SPLITS:
            raise SuiteError(f"{self.id}: unknown split {self.split!r}")
        if self.answer_kind not in ANSWER_KINDS:
            raise SuiteError(f"{self.id}: unknown answer kind {self.answer_kind!r}")
        if self.truth_source not in TRUTH_SOURCES:
            raise SuiteError(f"{self.id}: unknown truth source {self.truth_source!r}")
        if not self.query_template.strip():
            raise SuiteError(f"{self.id}: empty query template")
        if self.answer_kind in ("number", "interval") and (
            self.tolerance.absolute <= 0 and self.tolerance.relative <= 0
        ):
            raise SuiteError(f"{self.id}: numeric answers need a positive tolerance")

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "category": self.category,
            "split": self.split,
            "generator": self.generator.to_dict(),
            "query_kind": self.query_kind,
            "query_template": self.query_template,
            "answer_kind": self.answer_kind,
            "truth_source": self.truth_source,
            "tolerance": self.tolerance.to_dict(),
            "params": self.params,
        }

    @staticmethod
    def from_dict(d: dict) -> "TestCase":
        return TestCase(
            id=d["id"],
            category=d["category"],
            split=d["split"],
            generator=GeneratorSpec.from_dict(d["generator"]),
            query_kind=d["query_kind"],
            query_template=d["query_template"],
            answer_kind=d["answer_kind"],
            truth_source=d["truth_source"],
            tolerance=Tolerance.from_dict(d.get("tolerance", {"absolute": 0.05, "relative": 0.10})),
            params=d.get("params", {}),
        )


@dataclass
class Grade:
    test_id: str
    category: str
    split: str
    query_kind: str
    raw: str
    parsed: object
    truth: object
    passed: bool
    reason: str | None = None  # wrong-value | unparseable | evaluator-error | abstained | skipped

    @property
    def skipped(self) -> bool:
        return self.reason == "skipped"

    def to_dict(self) -> dict:
        return {
            "test_id": self.test_id,
            "category": self.category,
            "split": self.split,
            "query_kind": self.query_kind,
            "raw": self.raw,
            "parsed": self.parsed,
            "truth": self.truth,
            "passed": self.passed,
            "reason": self.reason,
        }


def validate_suite(cases: list) -> dict:
    """Check ids unique and splits labeled; return per-split/category counts."""
    seen = set()
    counts: dict = {"dev": 0, "heldout": 0, "by_category": {c: 0 for c in CATEGORIES}}
    for case in cases:
        if case.id in seen:
            raise SuiteError(f"duplicate test id: {case.id}")
        seen.add(case.id)
        counts[case.split] += 1
        counts["by_category"][case.category] += 1
    return counts


def load_suite(path) -> list:
    path = Path(path)
    if not path.exists():
        raise SuiteError(f"no such suite file: {path}")
    try:
        records = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as err:
        raise SuiteError(f"suite file {path} is not valid JSON: {err}") from None
    if not isinstance(records, list):
        raise SuiteError(f"suite file {path} must hold a JSON array")
    cases = [TestCase.from_dict(r) for r in records]
    validate_suite(cases)
    return cases


def save_suite(cases: list, path) -> None:
    validate_suite(cases)
    Path(path).write_text(json.dumps([c.to_dict() for c in cases], indent=1) + "\n", encoding="utf-8")


def default_suite_path() -> Path:
    return Path(__file__).resolve().parent.parent / "suites" / "default_suite.json"
