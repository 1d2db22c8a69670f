"""Synthetic data generators with known closed-form target functions.

Inputs are always i.i.d. standard normal. Each family interprets the
coefficient vector by a fixed block convention (blocks of length
n_features, optional trailing blocks/scalars):

  linear / sparse-linear  [lin(p)] or [lin(p), intercept]
  quadratic               [lin(p), quad(p)] or [lin(p), quad(p), intercept]
  interaction             [lin(p)] (+ pair coef for x0*x1) (+ triple coef
                          for x0*x1*x2)
  friedman1               coefficients ignored (fixed benchmark form), p>=5
  relu-hinge              [relu(p)] or [relu(p), lin(p)]; relu(x)=max(0,x)
  abs-value               [abs(p)] or [abs(p), lin(p)]
  exp-decay               [decay(p)] or [decay(p), lin(p)]; decay(x)=exp(-x)
  sinusoidal              [sin(p)] (+ [lin(p)]) (+ [relu(p)])
  piecewise3              [s_left, s_mid, s_right] (+ lin for x1..): a
                          continuous 3-segment function of x0 with corners
                          at -1 and +1
  cascading-threshold     [v0, v1, v2, v3]: staircase in x0 with steps at
                          -1, 0, +1
  nested-threshold        [a, b, c, d]: two-level if/else on x0 and x1
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..rng import Rng

FAMILIES = (
    "linear",
    "sparse-linear",
    "quadratic",
    "interaction",
    "friedman1",
    "relu-hinge",
    "piecewise3",
    "sinusoidal",
    "abs-value",
    "exp-decay",
    "nested-threshold",
    "cascading-threshold",
)


@dataclass
class GeneratorSpec:
    family: str
    coefficients: tuple
    noise_sd: float
    n_samples: int
    n_features: int
    seed: int

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown generator family: {self.family!r}")
        self.coefficients = tuple(float(c) for c in self.coefficients)

    def to_dict(self) -> dict:
        return {
            "family": self.family,
            "coefficients": list(self.coefficients),
            "noise_sd": self.noise_sd,
            "n_samples": self.n_samples,
            "n_features": self.n_features,
            "seed": self.seed,
        }

    @staticmethod
    def from_dict(d: dict) -> "GeneratorSpec":
        return GeneratorSpec(
            d["family"], tuple(d["coefficients"]), d["noise_sd"], d["n_samples"], d["n_features"], d["seed"]
        )


def _blocks(coefficients, p, count):
    """Split into up to `count` blocks of length p; missing blocks are zero."""
    c = np.asarray(coefficients, dtype=float)
    out = []
    for i in range(count):
        chunk = c[i * p : (i + 1) * p]
        block = np.zeros(p)
        block[: len(chunk)] = chunk
        out.append(block)
    return out


def true_function(spec: GeneratorSpec):
    """The family's closed-form target as a callable on (m, p) matrices."""
    p = spec.n_features
    c = np.asarray(spec.coefficients, dtype=float)
    family = spec.family

    if family in ("linear", "sparse-linear"):
        lin = np.zeros(p)
        lin[: min(len(c), p)] = c[:p]
        intercept = float(c[p]) if len(c) > p else 0.0
        return lambda X: X @ lin + intercept

    if family == "quadratic":
        lin, quad = _blocks(c[: 2 * p], p, 2)
        intercept = float(c[2 * p]) if len(c) > 2 * p else 0.0
        return lambda X: X @ lin + (X**2) @ quad + intercept

    if family == "interaction":
        lin = np.zeros(p)
        lin[: min(len(c), p)] = c[:p]
        pair = float(c[p]) if len(c) > p else 0.0
        triple = float(c[p + 1]) if len(c) > p + 1 else 0.0

        def f(X):
            out = X @ lin
            if pair:
                out = out + pair * X[:, 0] * X[:, 1]
            if triple:
                out = out + triple * X[:, 0] * X[:, 1] * X[:, 2]
            return out

        return f

    if family == "friedman1":
        if p < 5:
            raise ValueError("friedman1 needs at least 5 features")
        return lambda X: (
            10.0 * np.sin(np.pi * X[:, 0] * X[:, 1])
            + 20.0 * (X[:, 2] - 0.5) ** 2
            + 10.0 * X[:, 3]
            + 5.0 * X[:, 4]
        )

    if family == "relu-hinge":
        relu, lin = _blocks(c, p, 2)
        return lambda X: np.maximum(0.0, X) @ relu + X @ lin

    if family == "abs-value":
        ab, lin = _blocks(c, p, 2)
        return lambda X: np.abs(X) @ ab + X @ lin

    if family == "exp-decay":
        decay, lin = _blocks(c, p, 2)
        return lambda X: np.exp(-X) @ decay + X @ lin

    if family == "sinusoidal":
        sin, lin, relu = _blocks(c, p, 3)
        return lambda X: np.sin(X) @ sin + X @ lin + np.maximum(0.0, X) @ relu

    if family == "piecewise3":
        s_left, s_mid, s_right = (float(v) for v in c[:3])
        lin = np.zeros(p)
        rest = c[3:]
        lin[1 : 1 + len(rest)] = rest

        def f(X):
            x = X[:, 0]
            out = np.where(
                x > 1.0,
                s_mid + s_right * (x - 1.0),
                np.where(x < -1.0, -s_mid + s_left * (x + 1.0), s_mid * x),
            )
            return out + X @ lin

        return f

    if family == "cascading-threshold":
        v0, v1, v2, v3 = (float(v) for v in c[:4])

        def f(X):
            x = X[:, 0]
            return np.where(x <= -1.0, v0, np.where(x <= 0.0, v1, np.where(x <= 1.0, v2, v3)))

        return f

    if family == "nested-threshold":
        a, b, d, e = (float(v) for v in c[:4])

        def f(X):
            return np.where(X[:, 0] > 0.0, np.where(X[:, 1] > 0.0, a, b), np.where(X[:, 1] > 0.0, d, e))

        return f

    raise ValueError(f"unknown generator family: {family!r}")


def generate_data(spec: GeneratorSpec):
    """Draw (X, y, f): standard-normal X, y = f(X) plus seeded Gaussian
    noise, and the separable truth function."""
    f = true_function(spec)
    gen = Rng(spec.seed).generator
    X = gen.standard_normal((spec.n_samples, spec.n_features))
    y = f(X)
    if spec.noise_sd > 0:
        y = y + spec.noise_sd * gen.standard_normal(spec.n_samples)
    return X, y, f
