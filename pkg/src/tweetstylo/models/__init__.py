"""Native classifier families over the aggregated user matrix.

Eight families share one interface: build a ModelSpec, call `fit`, get a
TrainedModel whose `predict` returns 0/1 labels (1 = the target class)
and whose `predict_score` returns a monotone score. `tune_and_fit` runs
the stratified grid search first and refits the winner on all rows.
"""

import numpy as np

from .base import (
    ALWAYS_STANDARDIZE,
    FAMILIES,
    TREE_FAMILIES,
    ModelSpec,
    Scaler,
    TrainedModel,
    validate_training_matrix,
)
from .artifact import load_model, model_from_dict, model_to_dict, save_model
from .constructors import construct
from .metrics import Metrics, evaluate
from .split import (
    DEFAULT_GRIDS,
    complexity_key,
    cross_validate,
    stratified_kfold,
    stratified_split,
)

__all__ = [
    "ALWAYS_STANDARDIZE",
    "DEFAULT_GRIDS",
    "FAMILIES",
    "Metrics",
    "ModelSpec",
    "Scaler",
    "TREE_FAMILIES",
    "TrainedModel",
    "complexity_key",
    "cross_validate",
    "evaluate",
    "fit",
    "load_model",
    "model_from_dict",
    "model_to_dict",
    "save_model",
    "stratified_kfold",
    "stratified_split",
    "tune_and_fit",
    "validate_training_matrix",
]


def fit(spec: ModelSpec, X, y, schema_hash: str = "", columns: list = None) -> TrainedModel:
    """Train one estimator per the spec and wrap it with its scaler."""
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=int)
    validate_training_matrix(X, y, columns)
    scaler = None
    if spec.standardize or spec.family in ALWAYS_STANDARDIZE:
        scaler = Scaler.fit(X)
        X = scaler.transform(X)
    est = construct(spec).fit(X, y.astype(float))
    return TrainedModel(spec=spec, schema_hash=schema_hash, estimator=est, scaler=scaler)


def tune_and_fit(
    family: str,
    X,
    y,
    schema_hash: str = "",
    seed: int = 0,
    k: int = 5,
    grid: list = None,
    standardize: bool = False,
    columns: list = None,
) -> TrainedModel:
    """Grid search with stratified k-fold, then refit the winner on all rows."""
    if grid is None:
        grid = DEFAULT_GRIDS[family]
    specs = [
        ModelSpec(family=family, hyperparameters=dict(h), seed=seed, standardize=standardize)
        for h in grid
    ]

    def fit_fn(spec, Xtr, ytr):
        return fit(spec, Xtr, ytr, schema_hash=schema_hash)

    best, all_scores = cross_validate(specs, X, y, fit_fn, k=k, seed=seed)
    model = fit(best, X, y, schema_hash=schema_hash, columns=columns)
    model.fold_scores = all_scores[specs.index(best)]
    return model
