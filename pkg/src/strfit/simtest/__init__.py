"""Simulatability-test harness: synthetic generators, test cases, ground
truth, evaluator clients, grading, and suite scoring."""

from .cases import Grade, TestCase, Tolerance, load_suite, save_suite, validate_suite
from .catalog import default_suite
from .evaluator import EvaluatorConfig, HttpEvaluator, MockEvaluator, build_prompt, make_evaluator, mock_oracle, query_evaluator
from .generators import GeneratorSpec, generate_data
from .grading import grade, parse_answer, score_suite
from .harness import run_suite
from .truth import compute_ground_truth, render_query, resolve_test

__all__ = [
    "EvaluatorConfig",
    "GeneratorSpec",
    "Grade",
    "HttpEvaluator",
    "MockEvaluator",
    "TestCase",
    "Tolerance",
    "build_prompt",
    "compute_ground_truth",
    "default_suite",
    "generate_data",
    "grade",
    "load_suite",
    "make_evaluator",
    "mock_oracle",
    "parse_answer",
    "query_evaluator",
    "render_query",
    "resolve_test",
    "run_suite",
    "save_suite",
    "score_suite",
    "validate_suite",
]
