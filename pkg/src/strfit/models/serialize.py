"""Version-stamped JSON serialization for fitted models."""

from __future__ import annotations

import json
from pathlib import Path

from .additive import HybridGamModel, RidgeResidModel, SmartAdditiveModel
from .base import FittedModel, RenderPolicy, ResidualCorrector
from .hinge import HingeEbmModel, HingeGamModel
from .linear_family import LassoModel, OlsModel, RidgeModel, WinsorizedSparseModel
from .sparse_basis import SparseBasisModel
from .tree_family import Dt8Model, Dt20Model, ForestModel, GbmStumpsModel, TreeModel

FORMAT_VERSION = 1

FAMILY_CLASSES = {
    cls.family: cls
    for cls in (
        OlsModel,
        RidgeModel,
        LassoModel,
        WinsorizedSparseModel,
        HingeEbmModel,
        HingeGamModel,
        SmartAdditiveModel,
        HybridGamModel,
        RidgeResidModel,
        SparseBasisModel,
        TreeModel,
        Dt8Model,
        Dt20Model,
        ForestModel,
        GbmStumpsModel,
    )
}


def model_to_dict(model: FittedModel, meta: dict | None = None) -> dict:
    doc = {
        "format_version": FORMAT_VERSION,
        "family": model.family,
        "feature_names": list(model.feature_names),
        "policy": model.policy.to_dict(),
        "params": model.params_dict(),
        "corrector": model.corrector.to_dict() if model.corrector is not None else None,
    }
    if meta:
        doc["meta"] = meta
    return doc


def model_from_dict(doc: dict) -> FittedModel:
    version = doc.get("format_version")
    if version != FORMAT_VERSION:
        raise ValueError(f"unsupported model format version: {version!r}")
    family = doc["family"]
    if family not in FAMILY_CLASSES:
        raise ValueError(f"unknown model family: {family!r}")
    policy = RenderPolicy.from_dict(doc["policy"])
    corrector = ResidualCorrector.from_dict(doc["corrector"]) if doc.get("corrector") else None
    return FAMILY_CLASSES[family].from_params(doc["feature_names"], policy, corrector, doc["params"])


def save_model(model: FittedModel, path, meta: dict | None = None) -> None:
    Path(path).write_text(json.dumps(model_to_dict(model, meta), indent=1) + "\n", encoding="utf-8")


def load_model(path) -> FittedModel:
    return model_from_dict(json.loads(Path(path).read_text(encoding="utf-8")))
