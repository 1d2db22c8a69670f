"""Model zoo: every family exposes fit(dataset, seed, **hyper) -> FittedModel
with deterministic predict / render, addressable through MODEL_IDS."""

from __future__ import annotations

import numpy as np

from ..data import Dataset
from .additive import (
    FeatureDisplay,
    HybridGamModel,
    RidgeResidModel,
    SmartAdditiveModel,
    fit_hybrid_gam,
    fit_ridge_rf_resid,
    fit_smart_additive,
    linearization_gate,
)
from .base import CORRECTOR_NOTE, FittedModel, HybridConfig, RenderPolicy, ResidualCorrector
from .hinge import (
    HingeEbmModel,
    HingeGamModel,
    HingeSpec,
    collapse_hinges,
    fit_hinge_ebm,
    fit_hinge_gam,
)
from .linear_family import (
    LassoModel,
    OlsModel,
    RidgeModel,
    WinsorizedSparseModel,
    fit_baseline_lasso,
    fit_baseline_ols,
    fit_baseline_ridge,
    fit_winsorized_sparse_ols,
)
from .serialize import load_model, model_from_dict, model_to_dict, save_model
from .sparse_basis import SparseBasisModel, fit_sparse_signed_basis_pursuit
from .tree_family import (
    ForestModel,
    GbmStumpsModel,
    TreeModel,
    fit_baseline_gbm_stumps,
    fit_baseline_rf,
    fit_dt_leaves,
    fit_tiny_dt,
)

MODEL_IDS = {
    "ols": fit_baseline_ols,
    "ridge": fit_baseline_ridge,
    "lasso": fit_baseline_lasso,
    "dt8": lambda dataset, seed=0, **kw: fit_dt_leaves(dataset, 8, seed=seed, **kw),
    "dt20": lambda dataset, seed=0, **kw: fit_dt_leaves(dataset, 20, seed=seed, **kw),
    "rf": fit_baseline_rf,
    "gbm-stumps": fit_baseline_gbm_stumps,
    "tiny-dt": fit_tiny_dt,
    "hinge-ebm": fit_hinge_ebm,
    "hinge-gam": fit_hinge_gam,
    "smart-additive": fit_smart_additive,
    "hybrid-gam": fit_hybrid_gam,
    "ridge-rf-resid": fit_ridge_rf_resid,
    "winsorized-sparse-ols": fit_winsorized_sparse_ols,
    "sparse-signed-basis-pursuit": fit_sparse_signed_basis_pursuit,
}

BASELINE_KINDS = ("ols", "ridge", "lasso", "dt8", "dt20", "rf", "gbm-stumps")


def fit_model(model_id: str, dataset: Dataset, seed: int = 0, **hyper) -> FittedModel:
    if model_id not in MODEL_IDS:
        raise ValueError(f"unknown model id {model_id!r}; valid ids: {', '.join(sorted(MODEL_IDS))}")
    return MODEL_IDS[model_id](dataset, seed=seed, **hyper)


def fit_baseline(dataset: Dataset, kind: str, seed: int = 0) -> FittedModel:
    if kind not in BASELINE_KINDS:
        raise ValueError(f"unknown baseline kind {kind!r}; valid kinds: {', '.join(BASELINE_KINDS)}")
    return fit_model(kind, dataset, seed=seed)


def predict(model: FittedModel, X) -> np.ndarray:
    return model.predict(np.asarray(X, dtype=float))


def render(model: FittedModel) -> str:
    return model.render()
