"""Suite runner: fit the candidate on each test's generated data, show the
evaluator only the render string, grade the reply."""

from __future__ import annotations

import zlib
from concurrent.futures import ThreadPoolExecutor

from ..data import Dataset
from ..errors import EvaluatorError
from ..models import fit_model
from .cases import Grade, TestCase
from .evaluator import MockEvaluator, make_evaluator
from .generators import generate_data
from .grading import grade as grade_answer
from .grading import parse_answer
from .truth import resolve_test


def _fit_for_test(model_id: str, test: TestCase, seed: int):
    X, y, f = generate_data(test.generator)
    dataset = Dataset.from_arrays(X, y, name=test.id)
    fit_seed = zlib.crc32(f"{seed}|{model_id}|{test.id}".encode("utf-8"))
    model = fit_model(model_id, dataset, seed=fit_seed)
    return model, f


def run_suite(model_id: str, suite: list, evaluator, seed: int = 0, parallel: bool | None = None) -> list:
    """Grades for every test in the suite, in test-id order.

    `evaluator` is an EvaluatorConfig or a ready client. Mock evaluation is
    sequential; http evaluation fans out up to the config's concurrency cap
    and results are reduced back in test order.
    """
    from .evaluator import EvaluatorConfig

    client = make_evaluator(evaluator) if isinstance(evaluator, EvaluatorConfig) else evaluator
    tests = sorted(suite, key=lambda t: t.id)

    prepared = []
    for test in tests:
        model, f = _fit_for_test(model_id, test, seed)
        resolved = resolve_test(test, model, f)
        prepared.append((test, model, resolved))

    def ask(item):
        test, model, resolved = item
        if resolved.skip_reason is not None:
            return Grade(
                test_id=test.id, category=test.category, split=test.split, query_kind=test.query_kind,
                raw="", parsed=None, truth=None, passed=False, reason="skipped",
            )
        try:
            reply = client.evaluate(model.render(), resolved.query)
        except EvaluatorError as err:
            return Grade(
                test_id=test.id, category=test.category, split=test.split, query_kind=test.query_kind,
                raw=str(err), parsed=None, truth=resolved.truth, passed=False, reason="evaluator-error",
            )
        parsed, reason = parse_answer(reply, test.answer_kind)
        if parsed is None:
            return Grade(
                test_id=test.id, category=test.category, split=test.split, query_kind=test.query_kind,
                raw=reply, parsed=None, truth=resolved.truth, passed=False, reason=reason,
            )
        ok = grade_answer(parsed, resolved.truth, test.tolerance, test.answer_kind)
        return Grade(
            test_id=test.id, category=test.category, split=test.split, query_kind=test.query_kind,
            raw=reply, parsed=parsed, truth=resolved.truth, passed=ok,
            reason=None if ok else "wrong-value",
        )

    use_threads = parallel if parallel is not None else not isinstance(client, MockEvaluator)
    if use_threads:
        cap = getattr(getattr(client, "config", None), "concurrency", 4)
        with ThreadPoolExecutor(max_workers=max(1, cap)) as pool:
            return list(pool.map(ask, prepared))
    return [ask(item) for item in prepared]
