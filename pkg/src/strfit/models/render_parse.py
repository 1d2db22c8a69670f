"""Parser for the linear-equation render format.

The render contract makes `y = a*x0 + b*x1 + c` (with optional clip bounds)
machine-recoverable: parsing a linear-family render and evaluating it must
reproduce the model's predictions up to display rounding. Renders carrying
piecewise tables or non-linear terms are flagged rather than evaluated.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

import numpy as np

EQ_START = re.compile(r"^  y = ")
CONTINUATION = re.compile(r"^      \+ ")
LINEAR_TERM = re.compile(r"^(-?\d+(?:\.\d+)?)\*([A-Za-z_][A-Za-z0-9_]*)$")
NUMBER = re.compile(r"^-?\d+(?:\.\d+)?$")
CLIP_LINE = re.compile(r"^  ([A-Za-z_][A-Za-z0-9_]*): \[(-?\d+(?:\.\d+)?), (-?\d+(?:\.\d+)?)\]$")


@dataclass
class ParsedLinear:
    coefficients: dict = field(default_factory=dict)
    intercept: float = 0.0
    clip_bounds: dict = field(default_factory=dict)
    has_tables: bool = False
    nonlinear_terms: bool = False

    @property
    def is_plain_linear(self) -> bool:
        return not self.has_tables and not self.nonlinear_terms

    def evaluate(self, assignment: dict) -> float:
        """Evaluate the parsed equation; unspecified features count as 0."""
        total = self.intercept
        for name, coef in self.coefficients.items():
            v = float(assignment.get(name, 0.0))
            if name in self.clip_bounds:
                lo, hi = self.clip_bounds[name]
                v = min(max(v, lo), hi)
            total += coef * v
        return total


def parse_linear_render(text: str) -> ParsedLinear | None:
    """Extract the equation from a render string; None when no equation line
    is present."""
    lines = text.split("\n")
    eq_parts: list = []
    i = 0
    while i < len(lines):
        if EQ_START.match(lines[i]):
            eq_parts.append(lines[i][len("  y = "):])
            i += 1
            while i < len(lines) and CONTINUATION.match(lines[i]):
                eq_parts.append(lines[i][len("      + "):])
                i += 1
            break
        i += 1
    if not eq_parts:
        return None

    parsed = ParsedLinear()
    equation = " + ".join(eq_parts)
    for chunk in equation.split(" + "):
        chunk = chunk.strip()
        m = LINEAR_TERM.match(chunk)
        if m:
            parsed.coefficients[m.group(2)] = parsed.coefficients.get(m.group(2), 0.0) + float(m.group(1))
            continue
        if NUMBER.match(chunk):
            parsed.intercept += float(chunk)
            continue
        parsed.nonlinear_terms = True

    in_clips = False
    for line in lines:
        if "Nonlinear feature effects" in line:
            parsed.has_tables = True
        if line.startswith("Inputs are clipped"):
            in_clips = True
            continue
        if in_clips:
            m = CLIP_LINE.match(line)
            if m:
                parsed.clip_bounds[m.group(1)] = (float(m.group(2)), float(m.group(3)))
            elif line.strip() == "":
                in_clips = False
    return parsed
