"""The bundled 200-test simulatability suite.

43 development tests and 157 held-out tests across six categories
(feature attribution, point simulation, sensitivity, counterfactual,
structural, complex-function simulation). The held-out split is organized
into nine sub-categories per category with 2-3 instances each. The dev
split embeds the four canonical probes on the planted linear generator
(point prediction, most-important feature, unit sensitivity, and a
counterfactual target computed from the fitted model).

Tests flagged params["mock_answerable"] are the point-prediction,
unit-change, signed-effect, and most-important queries the offline mock
oracle is guaranteed to answer on plain linear renders.
"""

from __future__ import annotations

from .cases import TestCase, Tolerance
from .generators import GeneratorSpec

TOL_DEFAULT = Tolerance(0.05, 0.10)
TOL_TIGHT = Tolerance(0.01, 0.02)
TOL_LOOSE = Tolerance(0.35, 0.10)
TOL_RANGE = Tolerance(0.50, 0.25)
TOL_EXACT = Tolerance(1e-9, 0.0)
TOL_KINK = Tolerance(0.50, 0.0)

POINT_TEMPLATE = "What does the model predict for {assignments}? All other features are 0."
UNIT_TEMPLATE = (
    "If {feature} increases by 1 unit from 0 (all features start at 0), by how much does the"
    " model's prediction change? Give the signed change."
)
MOST_IMPORTANT_TEMPLATE = "Which single feature is most important to the model's predictions?"


def sparse(p, entries, intercept=None):
    c = [0.0] * p
    for j, v in entries.items():
        c[j] = v
    if intercept is not None:
        c.append(intercept)
    return tuple(c)


def gen(family, coefficients, noise, n, p, seed) -> GeneratorSpec:
    return GeneratorSpec(family, tuple(coefficients), noise, n, p, seed)


def case(id, category, split, generator, kind, template, answer, source, tol, **params) -> TestCase:
    return TestCase(
        id=id,
        category=category,
        split=split,
        generator=generator,
        query_kind=kind,
        query_template=template,
        answer_kind=answer,
        truth_source=source,
        tolerance=tol,
        params=params,
    )


def _dev_suite() -> list:
    tests = []
    add = tests.append
    fig_gen = gen("linear", (3.0, 2.0, 0.0), 0.1, 200, 3, 1101)

    # -- feature attribution (6)
    add(case(
        "dev/feature-attribution/most-important-feature", "feature-attribution", "dev",
        fig_gen, "most-important", MOST_IMPORTANT_TEMPLATE,
        "feature-name", "true-function", TOL_DEFAULT, mock_answerable=True,
    ))
    add(case(
        "dev/feature-attribution/feature-ranking", "feature-attribution", "dev",
        gen("sparse-linear", (1.0, 4.0, 0.0, 2.5), 0.1, 200, 4, 1102), "ranking",
        "Rank the top {k} features by importance to the model, most important first"
        " (reply like: x1, x0, x2).",
        "ranking", "true-function", TOL_DEFAULT, k=3,
    ))
    add(case(
        "dev/feature-attribution/irrelevant-features", "feature-attribution", "dev",
        gen("sparse-linear", sparse(5, {0: 3.0, 2: 2.0}), 0.1, 200, 5, 1103), "irrelevant-set",
        "List every feature with a negligible effect on the model's predictions (comma-separated).",
        "feature-set", "true-function", TOL_DEFAULT,
    ))
    add(case(
        "dev/feature-attribution/sparse-feature-set", "feature-attribution", "dev",
        gen("sparse-linear", sparse(10, {1: 3.0, 4: -2.0, 7: 1.5}), 0.1, 250, 10, 1104), "active-set",
        "List the features that have a non-negligible effect on the model's predictions (comma-separated).",
        "feature-set", "true-function", TOL_DEFAULT,
    ))
    add(case(
        "dev/feature-attribution/dominant-feature-sample", "feature-attribution", "dev",
        gen("linear", (2.0, 0.5, 1.0), 0.1, 200, 3, 1105), "dominant-at",
        "For the input {assignments} (all other features 0), which single feature contributes most"
        " to the model's prediction?",
        "feature-name", "true-function", TOL_DEFAULT, point={"x0": 0.2, "x1": 3.0, "x2": 0.5},
    ))
    add(case(
        "dev/feature-attribution/sign-of-effect", "feature-attribution", "dev",
        gen("linear", (-2.5, 1.0, 0.0), 0.1, 200, 3, 1106), "delta-effect", UNIT_TEMPLATE,
        "number", "fitted-model", TOL_DEFAULT, feature=0, changes={"x0": 1.0}, mock_answerable=True,
    ))

    # -- point simulation (17)
    def point_case(slug, generator, point, tol=TOL_DEFAULT, template=POINT_TEMPLATE, category="point-simulation"):
        return case(
            f"dev/{category}/{slug}", category, "dev", generator, "point", template,
            "number", "fitted-model", tol, point=point, mock_answerable=True,
        )

    add(point_case("point-prediction", fig_gen, {"x0": 2.0, "x1": 0.0, "x2": 0.0}))
    add(point_case("counterfactual-prediction", fig_gen, {"x0": -1.0, "x1": 2.0}))
    add(point_case(
        "all-features-active",
        gen("linear", (1.5, -2.0, 0.5), 0.2, 200, 3, 1108),
        {"x0": 1.2, "x1": -0.7, "x2": 2.0},
    ))
    add(point_case(
        "two-feature-perturbation",
        gen("linear", (2.0, 1.0, -1.0), 0.1, 200, 3, 1109),
        {"x0": 1.0, "x1": -2.0},
    ))
    add(point_case(
        "mixed-sign-goes-negative",
        gen("linear", (2.0, -3.0), 0.1, 150, 2, 1110),
        {"x0": 1.0, "x1": 1.5},
    ))
    add(case(
        "dev/point-simulation/pairwise-anti-intuitive", "point-simulation", "dev",
        gen("interaction", (3.0, 2.0, 1.5), 0.2, 250, 2, 1111), "compare-points",
        "Point A is {assignments_a}; point B is {assignments_b} (unspecified features are 0)."
        " Is the model's prediction at A greater than at B? Answer yes or no.",
        "boolean", "fitted-model", TOL_DEFAULT,
        point_a={"x0": 1.0, "x1": 1.0}, point_b={"x0": 2.0, "x1": -0.5},
    ))
    relu_gen = gen("relu-hinge", (3.0,), 0.1, 200, 1, 1112)
    add(point_case("predict-above-threshold", relu_gen, {"x0": 1.8}))
    add(point_case("predict-below-threshold", relu_gen, {"x0": -1.5}))
    add(point_case(
        "simulate-mixed-sign",
        gen("linear", (0.8, -1.6, 2.4, -0.8, 1.6, -2.4), 0.2, 300, 6, 1113),
        {"x0": 1.0, "x1": 0.5, "x2": -1.0, "x3": 2.0, "x4": -0.5, "x5": 1.0},
    ))
    add(point_case(
        "simulate-all-active",
        gen("linear", (1.0, -2.0, 1.5, -0.5, 2.0), 0.2, 250, 5, 1114),
        {"x0": 0.5, "x1": 1.0, "x2": -1.0, "x3": 2.0, "x4": 0.5},
    ))
    add(point_case(
        "simulatability",
        gen("interaction", (2.0, -1.0, 0.5, 1.0, 1.5), 0.2, 250, 4, 1115),
        {"x0": 1.0, "x1": -1.0, "x2": 0.5, "x3": 1.0},
    ))
    add(point_case(
        "eight-features",
        gen("linear", (1.0, -1.0, 2.0, -2.0, 0.5, -0.5, 1.5, -1.5), 0.2, 300, 8, 1116),
        {f"x{j}": v for j, v in enumerate([0.5, 1.0, -0.5, 0.5, 2.0, -1.0, 0.0, 1.0])},
    ))
    add(point_case(
        "fifteen-features-sparse",
        gen("sparse-linear", sparse(15, {2: 3.0, 7: -2.0, 11: 1.0}), 0.2, 300, 15, 1117),
        {"x2": 1.0, "x7": 0.5, "x11": -1.0},
        template="What does the model predict when only {assignments} are specified and every"
        " other feature is 0?",
    ))
    add(point_case(
        "twenty-features-sparse",
        gen("sparse-linear", sparse(20, {0: 2.0, 5: -1.5, 12: 1.0, 18: 2.5}), 0.2, 350, 20, 1118),
        {"x0": 1.0, "x5": 1.0, "x12": 2.0, "x18": -0.5},
        template="What does the model predict when only {assignments} are specified and every"
        " other feature is 0?",
    ))
    add(point_case(
        "twelve-features-all-active",
        gen("linear", tuple(((-1.0) ** j) * (0.5 + 0.1 * j) for j in range(12)), 0.2, 350, 12, 1119),
        {f"x{j}": v for j, v in enumerate([1.0, -1.0, 0.5, 0.5, -0.5, 1.0, 2.0, -1.0, 0.5, 1.0, -2.0, 0.5])},
    ))
    add(point_case(
        "quadratic",
        gen("quadratic", (0.0, 0.0, 1.0, 3.0, -2.0, 0.0), 0.3, 300, 3, 1120),
        {"x0": 1.0, "x1": 0.5, "x2": 1.0},
    ))
    add(point_case(
        "friedman1",
        gen("friedman1", (), 0.3, 300, 5, 1121),
        {"x0": 0.5, "x1": 0.5, "x2": 0.5, "x3": 0.5, "x4": 0.5},
    ))

    # -- sensitivity (6)
    add(case(
        "dev/sensitivity/direction-of-change", "sensitivity", "dev",
        gen("linear", (0.0, -2.0, 1.0), 0.1, 200, 3, 1122), "direction",
        "Suppose {feature} goes up by one unit from 0 (other features stay 0). Does the model's"
        " prediction increase? Answer yes or no.",
        "boolean", "fitted-model", TOL_DEFAULT, feature=1, changes={"x1": 1.0},
    ))
    add(case(
        "dev/sensitivity/quantitative-sensitivity", "sensitivity", "dev",
        gen("linear", (2.5, 1.0), 0.1, 200, 2, 1123), "range-effect",
        "If {feature} moves from {from_value} to {to_value} (other features 0), by how much does"
        " the model's prediction change? Give the signed change.",
        "number", "fitted-model", TOL_DEFAULT, feature=0, from_value=-1.0, to_value=2.0,
    ))
    add(case(
        "dev/sensitivity/unit-sensitivity", "sensitivity", "dev",
        fig_gen, "delta-effect", UNIT_TEMPLATE,
        "number", "fitted-model", TOL_TIGHT, feature=1, changes={"x1": 1.0}, mock_answerable=True,
    ))
    add(case(
        "dev/sensitivity/nonlinear-direction", "sensitivity", "dev",
        gen("quadratic", (0.0, -1.0, 2.0, 0.0), 0.2, 250, 2, 1124), "direction",
        "Starting from {base_assignments} (others 0), suppose {feature} goes up by 0.5. Does the"
        " model's prediction increase? Answer yes or no.",
        "boolean", "fitted-model", TOL_DEFAULT, feature=0, base={"x0": -1.0}, changes={"x0": 0.5},
    ))
    add(case(
        "dev/sensitivity/threshold-identification", "sensitivity", "dev",
        gen("cascading-threshold", (-2.0, -2.0, 1.0, 1.0), 0.15, 250, 2, 1125), "crossing",
        "As {feature} increases from -3.5 to 3.5 (other features 0), at what value of {feature}"
        " does the model's prediction first exceed {target}?",
        "number", "fitted-model", TOL_LOOSE, feature=0, target=0.0,
    ))
    add(case(
        "dev/sensitivity/nonlinear-threshold", "sensitivity", "dev",
        gen("relu-hinge", (3.0, 0.0, 0.0, 2.0), 0.15, 250, 2, 1126), "slope-change",
        "The model's sensitivity to {feature} differs on either side of some point. At"
        " approximately what value of {feature} does the slope change?",
        "number", "true-function", TOL_KINK, feature=0, kink=0.0,
    ))

    # -- counterfactual (2)
    add(case(
        "dev/counterfactual/counterfactual-target", "counterfactual", "dev",
        fig_gen, "counterfactual",
        "Starting from all features at 0, what value of {feature} makes the model predict"
        " {target}? Give just the value.",
        "number", "fitted-model", TOL_TIGHT, feature=0, cf_value=2.18,
    ))
    add(case(
        "dev/counterfactual/quadratic-counterfactual", "counterfactual", "dev",
        gen("quadratic", (0.0, 1.0, 1.5, 0.0), 0.2, 250, 2, 1127), "counterfactual",
        "Starting from all features at 0, what positive value of {feature} makes the model"
        " predict {target}?",
        "number", "fitted-model", TOL_DEFAULT, feature=0, cf_value=1.6, search_lo=0.0, search_hi=3.5,
    ))

    # -- structural (2)
    add(case(
        "dev/structural/compactness", "structural", "dev",
        gen("linear", (2.0, -1.0, 0.5), 0.1, 200, 3, 1128), "compactness",
        "Can this model's prediction for one input be computed in at most {budget} arithmetic"
        " operations? Answer yes or no.",
        "boolean", "fitted-model", TOL_DEFAULT, budget=10,
    ))
    add(case(
        "dev/structural/decision-region", "structural", "dev",
        gen("cascading-threshold", (-1.5, -1.5, -1.5, 2.0), 0.15, 250, 2, 1129), "crossing",
        "As {feature} increases from -3.5 to 3.5 (other features 0), at what value of {feature}"
        " does the model's prediction first exceed {target}?",
        "number", "fitted-model", TOL_LOOSE, feature=0, target=0.5,
    ))

    # -- complex-function simulation (10)
    def complex_case(slug, generator, point, tol=TOL_DEFAULT):
        return case(
            f"dev/complex-function/{slug}", "complex-function", "dev", generator, "point",
            POINT_TEMPLATE, "number", "fitted-model", tol, point=point, mock_answerable=True,
        )

    add(complex_case(
        "simulate-double-threshold",
        gen("cascading-threshold", (-2.0, -2.0, 0.0, 2.0), 0.15, 250, 1, 1130),
        {"x0": 0.5},
    ))
    add(complex_case(
        "simulate-additive-nonlinear",
        gen("sinusoidal", sparse(3, {1: 2.0}) + sparse(3, {2: 1.0}) + sparse(3, {0: 3.0}), 0.2, 300, 3, 1131),
        {"x0": 1.0, "x1": 0.8, "x2": -0.5},
    ))
    add(complex_case(
        "simulate-interaction",
        gen("interaction", (3.0, 2.0, 1.5), 0.2, 250, 2, 1132),
        {"x0": 1.0, "x1": -1.2},
    ))
    add(complex_case(
        "triple-interaction",
        gen("interaction", (1.0, 1.0, 0.0, 0.0, 2.0), 0.2, 300, 3, 1133),
        {"x0": 1.0, "x1": 2.0, "x2": 1.5},
    ))
    add(complex_case(
        "cascading-threshold",
        gen("cascading-threshold", (-3.0, -1.0, 1.0, 3.0), 0.15, 250, 1, 1134),
        {"x0": -0.5},
    ))
    add(complex_case(
        "exponential-decay",
        gen("exp-decay", (5.0, 0.0, 0.0, 2.0), 0.2, 250, 2, 1135),
        {"x0": 0.5, "x1": 1.0},
    ))
    add(complex_case(
        "piecewise-three-segment",
        gen("piecewise3", (-2.0, 0.5, 3.0, 1.0), 0.2, 250, 2, 1136),
        {"x0": 1.8, "x1": 0.5},
    ))
    add(complex_case(
        "sinusoidal",
        gen("sinusoidal", (2.5, 0.0, 0.0, 1.0), 0.2, 250, 2, 1137),
        {"x0": 0.6, "x1": 1.0},
    ))
    add(complex_case(
        "abs-value",
        gen("abs-value", (3.0, -2.0, 0.0, 0.0, 0.0, 1.0), 0.2, 300, 3, 1138),
        {"x0": -1.2, "x1": 0.5, "x2": 2.0},
    ))
    add(complex_case(
        "nested-threshold",
        gen("nested-threshold", (3.0, 1.0, -1.0, -3.0), 0.15, 250, 2, 1139),
        {"x0": 0.5, "x1": -0.5},
    ))
    return tests


# ---------------------------------------------------------------------------
# held-out split: nine sub-categories per category, 2-3 instances each


def _ho(tests, category, subcat, i, generator, kind, template, answer, source, tol, **params):
    tests.append(case(
        f"heldout/{category}/{subcat}-{i}", category, "heldout", generator, kind, template,
        answer, source, tol, **params,
    ))


def _heldout_feature_attribution(tests):
    cat = "feature-attribution"
    for i, (p, entries, seed) in enumerate([
        (4, {2: 4.0, 0: 1.5, 1: -0.8}, 2101),
        (5, {4: -3.5, 1: 1.2, 2: 0.7}, 2102),
        (6, {1: 5.0, 3: -2.0, 5: 1.0}, 2103),
    ]):
        _ho(tests, cat, "top-feature", i, gen("sparse-linear", sparse(p, entries), 0.1, 250, p, seed),
            "most-important", MOST_IMPORTANT_TEMPLATE, "feature-name", "true-function", TOL_DEFAULT,
            mock_answerable=True)
    for i, (p, entries, seed) in enumerate([
        (4, {0: 2.0, 1: -1.5, 3: 1.0}, 2104),
        (5, {0: 1.0, 1: 2.0, 2: -1.0, 4: 0.8}, 2105),
        (6, {0: -2.0, 1: 1.0, 2: 0.9, 4: 1.4, 5: -0.7}, 2106),
    ]):
        _ho(tests, cat, "zero-effect-feature", i, gen("sparse-linear", sparse(p, entries), 0.1, 250, p, seed),
            "zero-effect", "Which single feature has no effect on the model's predictions?",
            "feature-name", "true-function", TOL_DEFAULT)
    for i, (p, entries, seed) in enumerate([
        (4, {3: 4.0, 1: 2.0, 0: 0.5}, 2107),
        (5, {2: -3.0, 4: 1.8, 0: 0.6}, 2108),
        (6, {5: 3.2, 0: -1.6, 3: 0.5}, 2109),
    ]):
        _ho(tests, cat, "top-2-ranking", i, gen("sparse-linear", sparse(p, entries), 0.1, 250, p, seed),
            "ranking", "List the two most influential features in order, most important first"
            " (reply like: x1, x0).",
            "ranking", "true-function", TOL_DEFAULT, k=2)
    for i, (p, entries, seed) in enumerate([
        (6, {0: 3.0, 2: -2.0}, 2110),
        (7, {1: 2.5, 5: 2.0, 6: -1.5}, 2111),
        (8, {0: 1.5, 3: -2.5}, 2112),
    ]):
        _ho(tests, cat, "irrelevant-set", i, gen("sparse-linear", sparse(p, entries), 0.1, 300, p, seed),
            "irrelevant-set",
            "Name every feature whose effect on the model's predictions is negligible (comma-separated).",
            "feature-set", "true-function", TOL_DEFAULT)
    for i, (coefs, j, seed) in enumerate([
        ((1.5, -2.5, 0.8), 1, 2113),
        ((-0.9, 1.1, 3.0), 0, 2114),
        ((2.2, 0.4, -1.3), 2, 2115),
    ]):
        _ho(tests, cat, "sign-unit-effect", i, gen("linear", coefs, 0.1, 250, 3, seed),
            "delta-effect", UNIT_TEMPLATE, "number", "fitted-model", TOL_DEFAULT,
            feature=j, changes={f"x{j}": 1.0}, mock_answerable=True)
    for i, (coefs, point, seed) in enumerate([
        ((2.0, 0.5, 1.0), {"x0": 0.1, "x1": 2.5, "x2": 0.3}, 2116),
        ((1.0, 3.0, 0.5), {"x0": 2.0, "x1": 0.2, "x2": 1.0}, 2117),
        ((0.5, 1.0, 2.0), {"x0": 1.0, "x1": 2.5, "x2": 0.2}, 2118),
    ]):
        _ho(tests, cat, "dominant-at-sample", i, gen("linear", coefs, 0.1, 250, 3, seed),
            "dominant-at",
            "For the input {assignments} (all other features 0), which single feature contributes"
            " most to the model's prediction?",
            "feature-name", "true-function", TOL_DEFAULT, point=point)
    for i, (p, entries, seed) in enumerate([
        (4, {0: 3.0, 2: 2.0, 3: 0.5}, 2119),
        (5, {1: -4.0, 4: 2.5, 0: 1.0}, 2120),
        (6, {3: 2.8, 5: -2.0, 1: 0.9}, 2121),
    ]):
        _ho(tests, cat, "second-feature", i, gen("sparse-linear", sparse(p, entries), 0.1, 250, p, seed),
            "second-feature", "Which feature is the second most important to the model's predictions?",
            "feature-name", "true-function", TOL_DEFAULT)
    for i, (p, entries, seed) in enumerate([
        (6, {0: 2.0, 3: -1.5}, 2122),
        (8, {1: 2.0, 4: 1.5, 6: -1.0}, 2123),
        (10, {0: 3.0, 2: -2.0, 5: 1.5, 8: 1.0}, 2124),
    ]):
        _ho(tests, cat, "count-active", i, gen("sparse-linear", sparse(p, entries), 0.1, 300, p, seed),
            "count-active",
            "How many features have a non-negligible effect on the model's predictions? Answer"
            " with a single integer.",
            "number", "true-function", TOL_EXACT)
    for i, (coefs, a, b, seed) in enumerate([
        ((3.0, 0.5, -1.0), 0, 2, 2125),
        ((0.7, -2.2, 1.1), 1, 0, 2126),
    ]):
        _ho(tests, cat, "pair-importance", i, gen("linear", coefs, 0.1, 250, 3, seed),
            "pair-importance",
            "Between {feature} and {feature_b}, which matters more to the model's predictions?",
            "feature-name", "true-function", TOL_DEFAULT, feature=a, feature_b=b)


def _heldout_point_simulation(tests):
    cat = "point-simulation"

    def p_case(subcat, i, generator, point, tol=TOL_DEFAULT, template=POINT_TEMPLATE):
        _ho(tests, cat, subcat, i, generator, "point", template, "number", "fitted-model", tol,
            point=point, mock_answerable=True)

    for i, (p, coefs, point, seed) in enumerate([
        (2, (2.0, -1.0), {"x0": 1.5, "x1": 1.0}, 2201),
        (3, (1.0, 0.5, -2.0), {"x0": 1.0, "x1": 2.0, "x2": 0.5}, 2202),
        (4, (0.8, 1.2, -0.6, 2.0), {"x0": 0.5, "x1": -1.0, "x2": 1.0, "x3": 0.5}, 2203),
    ]):
        p_case("small-linear", i, gen("linear", coefs, 0.1, 200, p, seed), point)
    for i, (p, seed) in enumerate([(7, 2204), (8, 2205), (9, 2206)]):
        coefs = tuple(((-1.0) ** j) * (0.4 + 0.2 * j) for j in range(p))
        point = {f"x{j}": round(0.5 + 0.25 * j, 2) for j in range(p)}
        p_case("all-features-active", i, gen("linear", coefs, 0.2, 300, p, seed), point)
    for i, (p, entries, point, seed) in enumerate([
        (10, {1: 2.0, 4: -1.5, 8: 1.0}, {"x1": 1.0, "x4": 2.0, "x8": -1.0}, 2207),
        (14, {0: 3.0, 6: 1.5, 11: -2.0, 13: 0.5}, {"x0": 0.5, "x6": 1.0, "x11": 1.0, "x13": 2.0}, 2208),
        (18, {2: -2.5, 9: 2.0, 15: 1.0}, {"x2": 1.0, "x9": 0.5, "x15": -2.0}, 2209),
    ]):
        p_case(
            "sparse-many-feature", i, gen("sparse-linear", sparse(p, entries), 0.2, 350, p, seed), point,
            template="What does the model predict when only {assignments} are specified and every"
            " other feature is 0?",
        )
    for i, (p, seed) in enumerate([(4, 2210), (5, 2211), (6, 2212)]):
        coefs = tuple(((-1.0) ** j) * 1.5 for j in range(p))
        point = {f"x{j}": 1.0 for j in range(p)}
        p_case("alternating-sign", i, gen("linear", coefs, 0.1, 250, p, seed), point)
    for i, (coefs, point, seed) in enumerate([
        ((2.0, -1.0), {"x0": 2.4, "x1": -1.8}, 2213),
        ((1.5, 0.5, 1.0), {"x0": -2.1, "x1": 1.9, "x2": 1.6}, 2214),
        ((0.8, -2.0), {"x0": 1.7, "x1": 2.6}, 2215),
    ]):
        p_case("tail-query", i, gen("linear", coefs, 0.1, 250, len(coefs), seed), point)
    for i, (coefs, point, seed) in enumerate([
        ((2.0, 1.0), {"x0": 1.4142, "x1": 0.5772}, 2216),
        ((1.0, -1.5), {"x0": 2.7183, "x1": 0.3679}, 2217),
        ((0.5, 2.0, -1.0), {"x0": 1.6180, "x1": 0.6931, "x2": 1.1447}, 2218),
    ]):
        p_case("irrational-inputs", i, gen("linear", coefs, 0.1, 250, len(coefs), seed), point)
    for i, (p, coefs, point, seed) in enumerate([
        (4, (1.0, 2.0, -1.0, 0.5), {"x1": 1.5}, 2219),
        (5, (2.0, -0.5, 1.0, 0.8, -1.2), {"x2": -2.0}, 2220),
        (6, (0.5, 1.5, -2.0, 1.0, 0.7, -0.3), {"x5": 1.0, "x0": 1.0}, 2221),
    ]):
        p_case(
            "partial-input", i, gen("linear", coefs, 0.1, 250, p, seed), point,
            template="What does the model predict when only {assignments} are specified and every"
            " other feature is 0?",
        )
    for i, (coefs, point, seed) in enumerate([
        ((2.0, -1.0, 3.5), {"x0": 1.0, "x1": 1.0}, 2222),
        ((1.5, 0.5, -2.0), {"x0": 2.0, "x1": -1.0}, 2223),
        ((-1.0, 2.0, 1.5), {"x0": 0.5, "x1": 0.5}, 2224),
    ]):
        # the final coefficient is the generator's intercept
        p_case("non-zero-intercept", i, gen("linear", coefs, 0.1, 250, 2, seed), point)
    for i, (coefs, a, b, seed) in enumerate([
        ((2.0, -1.5, 0.5), {"x0": 1.0, "x1": 1.0}, {"x0": 0.5, "x2": 2.0}, 2225),
        ((1.0, 1.0, -2.0), {"x0": 2.0, "x2": 1.0}, {"x1": 2.5, "x2": -0.5}, 2226),
    ]):
        _ho(tests, cat, "compare-two-points", i, gen("linear", coefs, 0.1, 250, 3, seed),
            "compare-points",
            "Point A is {assignments_a}; point B is {assignments_b} (unspecified features are 0)."
            " Is the model's prediction at A greater than at B? Answer yes or no.",
            "boolean", "fitted-model", TOL_DEFAULT, point_a=a, point_b=b)


def _heldout_sensitivity(tests):
    cat = "sensitivity"
    for i, (coefs, j, base, seed) in enumerate([
        ((2.0, -1.0), 1, {"x0": 1.0}, 2301),
        ((-1.5, 0.8, 1.2), 0, {"x2": -1.0}, 2302),
        ((0.5, 2.5), 1, {}, 2303),
    ]):
        _ho(tests, cat, "direction-of-change", i, gen("linear", coefs, 0.1, 250, len(coefs), seed),
            "direction",
            "Suppose {feature} goes up by one unit (other features fixed). Does the model's"
            " prediction increase? Answer yes or no.",
            "boolean", "fitted-model", TOL_DEFAULT, feature=j, base=base, changes={f"x{j}": 1.0})
    for i, (coefs, j, a, b, seed) in enumerate([
        ((3.0, 1.0), 0, -2.0, 2.0, 2304),
        ((1.5, -2.0), 1, -1.5, 2.5, 2305),
        ((-0.8, 1.2, 2.0), 2, -2.0, 1.0, 2306),
    ]):
        _ho(tests, cat, "wide-range", i, gen("linear", coefs, 0.1, 250, len(coefs), seed),
            "range-effect",
            "If {feature} moves from {from_value} to {to_value} (other features 0), by how much does"
            " the model's prediction change? Give the signed change.",
            "number", "fitted-model", TOL_DEFAULT, feature=j, from_value=a, to_value=b)
    for i, (coefs, j, seed) in enumerate([
        ((2.0, 1.0, -0.5), 0, 2307),
        ((1.0, -3.0, 0.8), 1, 2308),
        ((0.6, 1.4, 2.2), 2, 2309),
    ]):
        _ho(tests, cat, "tight-unit-change", i, gen("linear", coefs, 0.1, 250, 3, seed),
            "delta-effect", UNIT_TEMPLATE, "number", "fitted-model", TOL_TIGHT,
            feature=j, changes={f"x{j}": 1.0}, mock_answerable=True)
    for i, (coefs, j, target, seed) in enumerate([
        ((2.0, 0.5), 0, 3.0, 2310),
        ((1.5, -1.0), 0, -2.0, 2311),
        ((0.5, 2.5), 1, 4.0, 2312),
    ]):
        _ho(tests, cat, "crossing-point", i, gen("linear", coefs, 0.1, 250, 2, seed),
            "crossing",
            "At what value of {feature} (other features 0) does the model's prediction cross"
            " {target}?",
            "number", "fitted-model", TOL_LOOSE, feature=j, target=target)
    for i, (coefs, changes, seed) in enumerate([
        ((2.0, -1.0), {"x0": 1.0, "x1": 1.0}, 2313),
        ((1.5, 0.8, -0.5), {"x0": 2.0, "x2": -1.0}, 2314),
        ((-1.0, 2.0, 0.5), {"x1": 0.5, "x2": 2.0}, 2315),
    ]):
        both = " and ".join(f"{k} changes by {v:+g}" for k, v in changes.items())
        _ho(tests, cat, "two-feature-change", i, gen("linear", coefs, 0.1, 250, len(coefs), seed),
            "delta-effect",
            f"Starting from all features at 0, {both} simultaneously. What is the net signed"
            " change in the model's prediction?",
            "number", "fitted-model", TOL_DEFAULT, changes=changes)
    for i, (coefs, j, seed) in enumerate([
        ((2.0, -1.5), 0, 2316),
        ((1.0, 2.5), 1, 2317),
        ((-0.8, 1.6, 0.9), 1, 2318),
    ]):
        _ho(tests, cat, "decrease-phrasing", i, gen("linear", coefs, 0.1, 250, len(coefs), seed),
            "delta-effect",
            "If {feature} decreases by 1 unit from 0 (others 0), what is the signed change in the"
            " model's prediction?",
            "number", "fitted-model", TOL_DEFAULT, feature=j, changes={f"x{j}": -1.0})
    for i, (coefs, j, step, seed) in enumerate([
        ((1.5, -0.5), 0, 2.5, 2319),
        ((2.0, 1.0), 1, 3.0, 2320),
        ((-1.2, 0.7), 0, -2.0, 2321),
    ]):
        _ho(tests, cat, "multi-unit-step", i, gen("linear", coefs, 0.1, 250, 2, seed),
            "delta-effect",
            f"If {{feature}} changes by {step:+g} units from 0 (others 0), what is the signed"
            " change in the model's prediction?",
            "number", "fitted-model", TOL_DEFAULT, feature=j, changes={f"x{j}": step})
    for i, (coefs, j, base, seed) in enumerate([
        ((2.0, 1.0), 0, {"x0": 1.5, "x1": -0.5}, 2322),
        ((1.0, -2.0), 1, {"x0": 0.5, "x1": 1.0}, 2323),
        ((0.8, 1.4, -0.6), 2, {"x2": -1.0}, 2324),
    ]):
        _ho(tests, cat, "non-zero-base", i, gen("linear", coefs, 0.1, 250, len(coefs), seed),
            "delta-effect",
            "With inputs at {base_assignments} (unspecified features 0), {feature} increases by"
            " 1 unit. By how much does the model's prediction change?",
            "number", "fitted-model", TOL_DEFAULT, feature=j, base=base, changes={f"x{j}": 1.0},
            mock_answerable=True)
    for i, (coefs, j, seed) in enumerate([
        ((2.4, -0.8), 0, 2325),
        ((1.1, 1.9), 1, 2326),
    ]):
        _ho(tests, cat, "small-step", i, gen("linear", coefs, 0.1, 250, 2, seed),
            "delta-effect",
            "If {feature} increases by 0.5 units from 0 (others 0), what is the signed change in"
            " the model's prediction?",
            "number", "fitted-model", TOL_DEFAULT, feature=j, changes={f"x{j}": 0.5})


def _heldout_counterfactual(tests):
    cat = "counterfactual"
    plain = (
        "Starting from all features at 0, what value of {feature} makes the model predict"
        " {target}? Give just the value."
    )
    for i, (coefs, j, v, seed) in enumerate([
        ((2.5, 1.0), 0, 1.4, 2401),
        ((1.2, -0.8), 0, 2.0, 2402),
        ((3.0, 0.5), 0, -1.2, 2403),
    ]):
        _ho(tests, cat, "inverse-on-linear", i, gen("linear", coefs, 0.1, 250, 2, seed),
            "counterfactual", plain, "number", "fitted-model", TOL_DEFAULT, feature=j, cf_value=v)
    for i, (coefs, j, v, seed) in enumerate([
        ((1.0, 2.5, 0.5), 1, 1.5, 2404),
        ((0.8, 1.0, -2.0), 2, -1.0, 2405),
        ((2.0, 0.6, 1.4), 2, 2.2, 2406),
    ]):
        _ho(tests, cat, "inverse-varied-feature", i, gen("linear", coefs, 0.1, 250, 3, seed),
            "counterfactual", plain, "number", "fitted-model", TOL_DEFAULT, feature=j, cf_value=v)
    for i, (p, entries, j, v, seed) in enumerate([
        (8, {2: 2.0, 5: -1.0}, 2, 1.8, 2407),
        (10, {0: 1.5, 7: 2.5}, 7, -1.5, 2408),
        (12, {4: -2.0, 9: 1.0}, 4, 1.2, 2409),
    ]):
        _ho(tests, cat, "inverse-sparse-data", i, gen("sparse-linear", sparse(p, entries), 0.15, 300, p, seed),
            "counterfactual", plain, "number", "fitted-model", TOL_DEFAULT, feature=j, cf_value=v)
    for i, (family, coefs, j, v, lo, hi, seed) in enumerate([
        ("relu-hinge", (3.0, 0.0, 0.0, 1.0), 0, 1.5, 0.0, 3.5, 2410),
        ("quadratic", (0.0, 0.5, 2.0, 0.0), 0, 1.4, 0.0, 3.5, 2411),
        ("abs-value", (2.5, 0.0, 0.0, 1.0), 0, 1.6, 0.0, 3.5, 2412),
    ]):
        _ho(tests, cat, "inverse-nonlinear", i, gen(family, coefs, 0.15, 300, 2, seed),
            "counterfactual",
            "Starting from all features at 0, what value of {feature} in [0, 3.5] makes the model"
            " predict {target}?",
            "number", "fitted-model", TOL_DEFAULT, feature=j, cf_value=v, search_lo=lo, search_hi=hi)
    for i, (coefs, j, v, seed) in enumerate([
        ((2.0, 1.0, 1.5), 0, 1.0, 2413),
        ((1.5, -0.5, -2.0), 0, 2.0, 2414),
        ((0.8, 2.2, 0.7), 1, 1.5, 2415),
    ]):
        # trailing coefficient is the intercept
        _ho(tests, cat, "with-intercept", i, gen("linear", coefs, 0.1, 250, 2, seed),
            "counterfactual", plain, "number", "fitted-model", TOL_DEFAULT, feature=j, cf_value=v)
    for i, (coefs, j, base, v, seed) in enumerate([
        ((2.0, 0.5), 0, {"x0": 2.0}, 0.5, 2416),
        ((1.5, 1.0), 0, {"x0": 1.0}, -1.0, 2417),
        ((-2.0, 0.8), 1, {"x1": 2.0}, 0.4, 2418),
    ]):
        _ho(tests, cat, "reverse-direction", i, gen("linear", coefs, 0.1, 250, 2, seed),
            "counterfactual",
            "The inputs currently sit at {base_assignments} (others 0). To what value must"
            " {feature} move for the model to predict {target}?",
            "number", "fitted-model", TOL_DEFAULT, feature=j, base=base, cf_value=v)
    for i, (coefs, j, v, seed) in enumerate([
        ((1.2, 0.5), 0, 3.0, 2419),
        ((0.9, -1.1), 0, -2.8, 2420),
        ((1.0, 1.8), 1, 2.9, 2421),
    ]):
        _ho(tests, cat, "large-change", i, gen("linear", coefs, 0.1, 250, 2, seed),
            "counterfactual", plain, "number", "fitted-model", TOL_DEFAULT, feature=j, cf_value=v)
    for i, (p, coefs, j, v, seed) in enumerate([
        (5, (1.0, 1.0, 2.0, 0.5, -0.5), 2, 1.5, 2422),
        (7, (0.5, 0.8, 1.0, 2.5, -1.0, 0.6, 0.9), 3, -1.2, 2423),
        (9, (0.4, 0.6, 0.8, 1.0, 2.2, -0.7, 0.5, 0.3, 0.9), 4, 1.8, 2424),
    ]):
        _ho(tests, cat, "mid-index-feature", i, gen("linear", coefs, 0.15, 300, p, seed),
            "counterfactual", plain, "number", "fitted-model", TOL_DEFAULT, feature=j, cf_value=v)
    for i, (coefs, j, v, seed) in enumerate([
        ((2.0, 0.5), 0, -1.5, 2425),
        ((-1.8, 1.0), 0, 1.4, 2426),
    ]):
        _ho(tests, cat, "negative-target", i, gen("linear", coefs, 0.1, 250, 2, seed),
            "counterfactual", plain, "number", "fitted-model", TOL_DEFAULT, feature=j, cf_value=v)


def _heldout_structural(tests):
    cat = "structural"
    for i, (levels, target, seed) in enumerate([
        ((-2.0, -2.0, 1.5, 1.5), 0.0, 2501),
        ((-1.0, -1.0, -1.0, 2.0), 0.8, 2502),
        ((-3.0, -0.5, 0.5, 3.0), 1.2, 2503),
    ]):
        _ho(tests, cat, "decision-region", i, gen("cascading-threshold", levels, 0.15, 300, 2, seed),
            "crossing",
            "As {feature} increases from -3.5 to 3.5 (other features 0), at what value of"
            " {feature} does the model's prediction first exceed {target}?",
            "number", "fitted-model", TOL_LOOSE, feature=0, target=target)
    for i, (p, budget, seed) in enumerate([(3, 10, 2504), (5, 15, 2505), (2, 8, 2506)]):
        coefs = tuple(1.0 + 0.3 * j for j in range(p))
        _ho(tests, cat, "compactness", i, gen("linear", coefs, 0.1, 250, p, seed),
            "compactness",
            "Can this model's prediction for one input be computed in at most {budget} arithmetic"
            " operations? Answer yes or no.",
            "boolean", "fitted-model", TOL_DEFAULT, budget=budget)
    for i, (family, coefs, seed) in enumerate([
        ("abs-value", (-2.0, 0.0), 2507),
        ("quadratic", (0.0, 0.0, -1.5, 0.0), 2508),
        ("piecewise3", (2.0, 0.5, -2.0), 2509),
    ]):
        _ho(tests, cat, "argmax", i, gen(family, coefs, 0.15, 300, 2, seed),
            "argmax",
            "Holding other features at 0, what value of {feature} in [-3, 3] maximizes the"
            " model's prediction?",
            "number", "fitted-model", TOL_LOOSE, feature=0)
    for i, (family, coefs, seed) in enumerate([
        ("abs-value", (2.5, 0.0), 2510),
        ("quadratic", (0.0, 0.0, 1.8, 0.0), 2511),
        ("piecewise3", (-2.0, -0.4, 2.2), 2512),
    ]):
        _ho(tests, cat, "argmin", i, gen(family, coefs, 0.15, 300, 2, seed),
            "argmin",
            "Holding other features at 0, what value of {feature} in [-3, 3] minimizes the"
            " model's prediction?",
            "number", "fitted-model", TOL_LOOSE, feature=0)
    for i, (coefs, j, seed) in enumerate([
        ((2.0, -1.0), 0, 2513),
        ((-1.5, 0.8), 0, 2514),
        ((0.5, 1.8, -0.9), 1, 2515),
    ]):
        _ho(tests, cat, "monotonic-direction", i, gen("linear", coefs, 0.1, 250, len(coefs), seed),
            "monotonic",
            "With other features at 0, is the model's prediction higher at {feature}={hi} than at"
            " {feature}={lo}? Answer yes or no.",
            "boolean", "fitted-model", TOL_DEFAULT, feature=j, search_lo=-2.0, search_hi=2.0)
    for i, (coefs, seed) in enumerate([
        ((2.0, 1.0), 2516),
        ((0.8, -1.4, 0.6), 2517),
        ((3.0,), 2518),
    ]):
        _ho(tests, cat, "output-range", i, gen("linear", coefs, 0.1, 250, len(coefs), seed),
            "output-range",
            "Approximately what range do the model's predictions cover for typical inputs (each"
            " feature mostly within [-3, 3])? Answer with two numbers: minimum and maximum.",
            "interval", "fitted-model", TOL_RANGE)
    for i, (levels, target, seed) in enumerate([
        ((-2.0, -1.0, 1.0, 2.0), 0.0, 2519),
        ((-1.5, 0.0, 1.5, 3.0), 0.7, 2520),
        ((-4.0, -2.0, 0.0, 2.0), -1.0, 2521),
    ]):
        _ho(tests, cat, "decision-mid-output", i, gen("cascading-threshold", levels, 0.15, 300, 1, seed),
            "crossing",
            "As {feature} increases from -3.5 to 3.5, at what value of {feature} does the model's"
            " prediction first exceed {target}?",
            "number", "fitted-model", TOL_LOOSE, feature=0, target=target)
    for i, (family, coefs, seed) in enumerate([
        ("sinusoidal", (2.0, 0.0), 2522),
        ("quadratic", (1.0, 0.0, -1.0, 0.0), 2523),
        ("exp-decay", (-3.0, 0.0), 2524),
    ]):
        _ho(tests, cat, "argmax-nonlinear", i, gen(family, coefs, 0.15, 300, 2, seed),
            "argmax",
            "Holding other features at 0, what value of {feature} in [-3, 3] maximizes the"
            " model's prediction?",
            "number", "fitted-model", TOL_LOOSE, feature=0)
    for i, (family, coefs, lo, hi, seed) in enumerate([
        ("relu-hinge", (3.0, 0.0), -3.0, -1.0, 2525),
        ("cascading-threshold", (-2.0, -2.0, -2.0, 2.0), -3.2, -0.4, 2526),
    ]):
        _ho(tests, cat, "plateau-region", i, gen(family, coefs, 0.15, 300, 1, seed),
            "plateau",
            "Holding other features at 0, is the model's prediction approximately constant for"
            " {feature} between {lo} and {hi}? Answer yes or no.",
            "boolean", "fitted-model", TOL_DEFAULT, feature=0, lo=lo, hi=hi)


def _heldout_complex(tests):
    cat = "complex-function"

    def p_case(subcat, i, generator, point, tol=TOL_DEFAULT):
        _ho(tests, cat, subcat, i, generator, "point", POINT_TEMPLATE, "number", "fitted-model",
            tol, point=point, mock_answerable=True)

    for i, (coefs, point, seed) in enumerate([
        ((0.0, 0.0, 2.0, 0.0, 1.0), {"x0": 1.5, "x1": 0.5}, 2601),      # 1 + 2*x0^2
        ((1.0, 0.0, -1.5, 0.0, 0.5), {"x0": -1.0, "x1": 1.0}, 2602),    # 0.5 + x0 - 1.5*x0^2
        ((0.0, 0.5, 0.0, 2.5, -1.0), {"x0": 1.0, "x1": 1.2}, 2603),     # -1 + 0.5*x1 + 2.5*x1^2
    ]):
        p_case("quadratic", i, gen("quadratic", coefs, 0.2, 300, 2, seed), point)
    for i, (coefs, point, seed) in enumerate([
        ((3.0, 2.0, 1.5), {"x0": 1.0, "x1": 1.5}, 2604),
        ((1.0, -1.0, 2.0), {"x0": -0.5, "x1": 2.0}, 2605),
        ((0.5, 0.5, -2.5), {"x0": 1.2, "x1": 0.8}, 2606),
    ]):
        p_case("pairwise-interaction", i, gen("interaction", coefs, 0.2, 300, 2, seed), point)
    for i, (coefs, point, seed) in enumerate([
        ((0.5, 0.5, 0.5, 0.0, 2.0), {"x0": 1.0, "x1": 1.0, "x2": 2.0}, 2607),
        ((1.0, 0.0, 0.0, 1.0, -1.5), {"x0": 1.0, "x1": -1.0, "x2": 1.0}, 2608),
        ((0.0, 0.0, 0.0, 0.5, 3.0), {"x0": 0.5, "x1": 2.0, "x2": 1.0}, 2609),
    ]):
        p_case("triple-interaction", i, gen("interaction", coefs, 0.2, 300, 3, seed), point)
    for i, (point, seed) in enumerate([
        ({"x0": 0.5, "x1": 0.5, "x2": 0.5, "x3": 0.5, "x4": 0.5}, 2610),
        ({"x0": 1.0, "x1": 0.2, "x2": 1.0, "x3": -0.5, "x4": 1.0}, 2611),
        ({"x0": -0.4, "x1": 0.8, "x2": 0.0, "x3": 1.0, "x4": -1.0}, 2612),
    ]):
        p_case("friedman1", i, gen("friedman1", (), 0.3, 300, 5, seed), point)
    for i, (levels, point, seed) in enumerate([
        ((-3.0, -1.0, 1.0, 3.0), {"x0": 1.5}, 2613),
        ((0.0, 1.0, 2.0, 4.0), {"x0": -0.5}, 2614),
        ((-2.0, 0.0, 0.0, 2.0), {"x0": -1.4}, 2615),
    ]):
        p_case("cascading-threshold", i, gen("cascading-threshold", levels, 0.15, 300, 1, seed), point)
    for i, (coefs, point, seed) in enumerate([
        ((5.0, 0.0, 0.0, 2.0), {"x0": 1.0, "x1": 0.5}, 2616),
        ((3.0, 0.0, 0.0, -1.0), {"x0": -0.8, "x1": 1.0}, 2617),
        ((4.0, 0.0, 0.5, 0.0), {"x0": 0.4, "x1": -1.2}, 2618),
    ]):
        p_case("exponential-decay", i, gen("exp-decay", coefs, 0.2, 300, 2, seed), point, tol=Tolerance(0.1, 0.1))
    for i, (coefs, point, seed) in enumerate([
        ((-2.0, 0.5, 3.0), {"x0": 1.6}, 2619),
        ((0.3, 1.5, 0.3), {"x0": -1.8}, 2620),
        ((2.5, -0.5, 2.5, 1.0), {"x0": 0.4, "x1": 1.0}, 2621),
    ]):
        p_case("piecewise-three-segment", i, gen("piecewise3", coefs, 0.2, 300, 2 if len(coefs) > 3 else 1, seed), point)
    for i, (coefs, point, seed) in enumerate([
        ((2.5, 0.0, 0.0, 1.0), {"x0": 0.6, "x1": 1.0}, 2622),
        ((-2.0, 0.0), {"x0": 1.2}, 2623),
        ((3.0, 1.0, 0.5, 0.0), {"x0": -0.9, "x1": 0.7}, 2624),
    ]):
        p_case("sinusoidal", i, gen("sinusoidal", coefs, 0.2, 300, 2, seed), point)
    for i, (coefs, point, seed) in enumerate([
        ((3.0, -2.0, 0.0, 0.0, 0.0, 1.0), {"x0": -1.2, "x1": 0.5, "x2": 2.0}, 2625),
        ((2.0, 0.0, 0.0, 0.0, 1.5, 0.0), {"x0": 0.8, "x1": -1.0}, 2626),
        ((-1.5, 2.5, 0.0, 0.0, 0.0, 0.0), {"x0": 1.0, "x1": -1.4}, 2627),
    ]):
        p_case("absolute-value", i, gen("abs-value", coefs, 0.2, 300, 3 if len(coefs) == 6 else 2, seed), point)


def default_suite() -> list:
    """All 200 bundled tests (43 dev + 157 held-out)."""
    tests = _dev_suite()
    _heldout_feature_attribution(tests)
    _heldout_point_simulation(tests)
    _heldout_sensitivity(tests)
    _heldout_counterfactual(tests)
    _heldout_structural(tests)
    _heldout_complex(tests)
    return tests
