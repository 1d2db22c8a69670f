"""Answer parsing, grading, and suite scoring."""

from __future__ import annotations

import re
from dataclasses import dataclass

from .cases import Grade, Tolerance

ABSTENTIONS = (
    "cannot answer",
    "cannot determine",
    "cannot be determined",
    "not enough information",
    "unable to determine",
    "insufficient information",
)

NUMBER = re.compile(r"[-+]?\d{1,3}(?:,\d{3})+(?:\.\d+)?|[-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?")
FEATURE = re.compile(r"\bx\d+\b", re.IGNORECASE)
YES = re.compile(r"\b(yes|true)\b", re.IGNORECASE)
NO = re.compile(r"\b(no|false)\b", re.IGNORECASE)


def _normalize(text: str) -> str:
    return text.replace("−", "-").replace("–", "-").strip()


def parse_answer(raw: str, kind: str):
    """Extract the final number, feature token(s), boolean, or interval.

    Returns (value, None) on success and (None, reason) otherwise;
    abstention phrases map to the "abstained" reason.
    """
    text = _normalize(raw or "")
    low = text.lower()
    if not text:
        return None, "unparseable"
    if any(phrase in low for phrase in ABSTENTIONS):
        return None, "abstained"

    if kind == "number":
        tokens = NUMBER.findall(text)
        if not tokens:
            return None, "unparseable"
        return float(tokens[-1].replace(",", "")), None

    if kind == "interval":
        tokens = NUMBER.findall(text)
        if len(tokens) < 2:
            return None, "unparseable"
        a, b = (float(t.replace(",", "")) for t in tokens[-2:])
        return (min(a, b), max(a, b)), None

    if kind == "feature-name":
        tokens = FEATURE.findall(text)
        if not tokens:
            return None, "unparseable"
        return tokens[0].lower(), None

    if kind == "ranking":
        tokens = FEATURE.findall(text)
        if not tokens:
            return None, "unparseable"
        seen: list = []
        for tok in tokens:
            tok = tok.lower()
            if tok not in seen:
                seen.append(tok)
        return seen, None

    if kind == "feature-set":
        tokens = FEATURE.findall(text)
        if not tokens:
            if re.search(r"\bnone\b", low):
                return [], None
            return None, "unparseable"
        return sorted({tok.lower() for tok in tokens}), None

    if kind == "boolean":
        yes = YES.search(text)
        no = NO.search(text)
        if yes and no:
            return (yes.start() < no.start()), None
        if yes:
            return True, None
        if no:
            return False, None
        return None, "unparseable"

    raise ValueError(f"unknown answer kind: {kind!r}")


def _number_ok(parsed: float, truth: float, tolerance: Tolerance) -> bool:
    return abs(parsed - truth) <= tolerance.bound(truth)


def grade(parsed, truth, tolerance: Tolerance, kind: str) -> bool:
    """Numeric answers pass within max(absolute, relative*|truth|); sets
    must be equal after normalization, rankings must match exactly in
    order, booleans exactly."""
    if parsed is None:
        return False
    if kind == "number":
        return _number_ok(float(parsed), float(truth), tolerance)
    if kind == "interval":
        (plo, phi), (tlo, thi) = parsed, truth
        return _number_ok(plo, tlo, tolerance) and _number_ok(phi, thi, tolerance)
    if kind == "feature-name":
        return str(parsed).lower() == str(truth).lower()
    if kind == "ranking":
        return [str(t).lower() for t in parsed] == [str(t).lower() for t in truth]
    if kind == "feature-set":
        return sorted(str(t).lower() for t in parsed) == sorted(str(t).lower() for t in truth)
    if kind == "boolean":
        return bool(parsed) == bool(truth)
    raise ValueError(f"unknown answer kind: {kind!r}")


@dataclass
class ScoreReport:
    overall: float
    attempted: int
    passed: int
    skipped: int
    per_category: dict

    def to_dict(self) -> dict:
        return {
            "overall": self.overall,
            "attempted": self.attempted,
            "passed": self.passed,
            "skipped": self.skipped,
            "per_category": self.per_category,
        }


def score_suite(grades: list, split: str | None = None) -> ScoreReport:
    """Pass rate over attempted (non-skipped) tests of the chosen split,
    with a per-category breakdown."""
    rows = [g for g in grades if split is None or g.split == split]
    skipped = sum(1 for g in rows if g.skipped)
    attempted = [g for g in rows if not g.skipped]
    passed = sum(1 for g in attempted if g.passed)
    per_category: dict = {}
    for g in attempted:
        bucket = per_category.setdefault(g.category, {"attempted": 0, "passed": 0})
        bucket["attempted"] += 1
        bucket["passed"] += 1 if g.passed else 0
    for bucket in per_category.values():
        bucket["rate"] = bucket["passed"] / bucket["attempted"] if bucket["attempted"] else 0.0
    overall = passed / len(attempted) if attempted else 0.0
    return ScoreReport(overall=overall, attempted=len(attempted), passed=passed, skipped=skipped, per_category=per_category)
