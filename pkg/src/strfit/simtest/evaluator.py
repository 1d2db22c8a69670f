"""Evaluator backends: a deterministic offline oracle for linear renders,
and a chat-completion HTTP client with retries and a concurrency cap.

Wire format (http-llm): POST <endpoint> with JSON
  {"model": <name>, "messages": [{"role": "user", "content": <prompt>}],
   "temperature": 0}
and the reply text is read from choices[0].message.content.
"""

from __future__ import annotations

import json
import os
import re
import threading
import time
import urllib.error
import urllib.request
from dataclasses import dataclass

from ..errors import EvaluatorError
from ..models.render_parse import parse_linear_render

PROMPT_VERSION = "1"
PROMPT_PREAMBLE = (
    "You are given a fitted regression model, described only by its printed form below.\n"
    "Answer the question using only this printed model. Reply with the bare answer\n"
    "(a number, feature name(s), yes/no, or an interval) and no explanation.\n"
    "If the printed model does not contain enough information, reply CANNOT ANSWER.\n"
)

DEFAULT_CREDENTIAL_ENV = "LLM_EVAL_API_KEY"


@dataclass
class EvaluatorConfig:
    kind: str = "mock-oracle"  # "mock-oracle" | "http-llm"
    endpoint: str = ""
    model: str = ""
    credential_env: str = DEFAULT_CREDENTIAL_ENV
    temperature: float = 0.0
    max_retries: int = 2
    timeout: float = 30.0
    concurrency: int = 4

    def __post_init__(self):
        if self.kind not in ("mock-oracle", "http-llm"):
            raise ValueError(f"unknown evaluator kind: {self.kind!r}")
        if self.kind == "http-llm":
            if not self.endpoint or not self.model:
                raise ValueError("http-llm evaluator needs an endpoint and a model name")
            if self.temperature != 0.0:
                raise ValueError("http-llm evaluation runs at temperature 0")

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "endpoint": self.endpoint,
            "model": self.model,
            "credential_env": self.credential_env,
            "temperature": self.temperature,
            "max_retries": self.max_retries,
            "timeout": self.timeout,
            "concurrency": self.concurrency,
        }

    @staticmethod
    def from_dict(d: dict) -> "EvaluatorConfig":
        return EvaluatorConfig(**d)


def build_prompt(model_string: str, query: str) -> str:
    """Fixed prompt template with MODEL: and QUESTION: blocks; byte-stable
    given its inputs."""
    if not query.strip():
        raise ValueError("query must be non-empty")
    if not model_string.strip():
        raise ValueError("model string must be non-empty")
    return f"{PROMPT_PREAMBLE}\nMODEL:\n{model_string}\n\nQUESTION:\n{query}\n"


# ---------------------------------------------------------------------------
# mock oracle

ASSIGNMENT = re.compile(r"\b(x\d+)\s*=\s*(-?\d+(?:\.\d+)?)")
UNIT_CHANGE = re.compile(r"increases by (?:1|one) unit", re.IGNORECASE)
FEATURE_TOKEN = re.compile(r"\bx\d+\b", re.IGNORECASE)
MOST_IMPORTANT = re.compile(r"single feature is most important|most important feature", re.IGNORECASE)
PREDICT = re.compile(r"\bmodel predicts?\b", re.IGNORECASE)

CANNOT = "CANNOT ANSWER"


def mock_oracle(model_string: str, query: str) -> str:
    """Deterministic evaluator for plain linear renders.

    Answers point predictions, unit-change effects (which covers unit
    sensitivity and signed effect size), and most-important-feature
    queries; replies CANNOT ANSWER for anything else.
    """
    parsed = parse_linear_render(model_string)
    if parsed is None or not parsed.is_plain_linear:
        return CANNOT

    m = UNIT_CHANGE.search(query)
    if m:
        # the moved feature is the last feature token before the phrase
        tokens = [t for t in FEATURE_TOKEN.finditer(query[: m.start()])]
        if not tokens:
            return CANNOT
        return repr(parsed.coefficients.get(tokens[-1].group(0).lower(), 0.0))

    if MOST_IMPORTANT.search(query):
        if not parsed.coefficients:
            return CANNOT
        return max(parsed.coefficients, key=lambda k: (abs(parsed.coefficients[k]), k))

    if PREDICT.search(query):
        pairs = {name: float(v) for name, v in ASSIGNMENT.findall(query)}
        if not pairs:
            return CANNOT
        return repr(parsed.evaluate(pairs))

    return CANNOT


# ---------------------------------------------------------------------------
# evaluator clients


class MockEvaluator:
    kind = "mock-oracle"

    def evaluate(self, model_string: str, query: str) -> str:
        build_prompt(model_string, query)  # enforce the same preconditions
        return mock_oracle(model_string, query)


class HttpEvaluator:
    kind = "http-llm"

    def __init__(self, config: EvaluatorConfig):
        self.config = config
        self._gate = threading.Semaphore(config.concurrency)
        key = os.environ.get(config.credential_env, "")
        if not key:
            raise EvaluatorError(
                f"no credential found in ${config.credential_env}; set it or use the mock evaluator"
            )
        self._key = key

    def evaluate(self, model_string: str, query: str) -> str:
        return query_evaluator(self.config, build_prompt(model_string, query), _gate=self._gate, _key=self._key)


def query_evaluator(config: EvaluatorConfig, prompt: str, _gate=None, _key=None) -> str:
    """At most (max_retries + 1) attempts with exponential backoff."""
    if config.kind == "mock-oracle":
        raise ValueError("query_evaluator drives the http-llm backend; call mock_oracle directly")
    key = _key or os.environ.get(config.credential_env, "")
    if not key:
        raise EvaluatorError(f"no credential found in ${config.credential_env}")
    payload = json.dumps(
        {
            "model": config.model,
            "messages": [{"role": "user", "content": prompt}],
            "temperature": config.temperature,
        }
    ).encode("utf-8")
    last_error = None
    for attempt in range(config.max_retries + 1):
        if attempt:
            time.sleep(min(2.0 ** (attempt - 1), 8.0))
        try:
            if _gate is not None:
                _gate.acquire()
            try:
                request = urllib.request.Request(
                    config.endpoint,
                    data=payload,
                    headers={"Content-Type": "application/json", "Authorization": f"Bearer {key}"},
                )
                with urllib.request.urlopen(request, timeout=config.timeout) as response:
                    body = json.loads(response.read().decode("utf-8"))
            finally:
                if _gate is not None:
                    _gate.release()
            return body["choices"][0]["message"]["content"]
        except (urllib.error.URLError, OSError, KeyError, IndexError, json.JSONDecodeError) as err:
            last_error = err
    raise EvaluatorError(f"evaluator failed after {config.max_retries + 1} attempts: {last_error}")


def make_evaluator(config: EvaluatorConfig):
    if config.kind == "mock-oracle":
        return MockEvaluator()
    return HttpEvaluator(config)
