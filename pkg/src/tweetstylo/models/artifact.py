"""JSON persistence for trained models.

Artifacts carry no timestamps or environment strings, so retraining with
the same inputs writes byte-identical files.
"""

import json
from pathlib import Path

import numpy as np

from .base import ModelSpec, Scaler, TrainedModel

FORMAT = "tweetstylo-model/1"


def _estimator_class(family: str):
    from .gbdt import GBDTEstimator
    from .forest import ForestEstimator
    from .knn import KNNEstimator
    from .linear import LDAEstimator, LogisticEstimator, RidgeEstimator
    from .naive_bayes import GaussianNBEstimator
    from .tree import CARTEstimator

    return {
        "logistic_regression": LogisticEstimator,
        "ridge": RidgeEstimator,
        "lda": LDAEstimator,
        "gaussian_nb": GaussianNBEstimator,
        "knn": KNNEstimator,
        "decision_tree": CARTEstimator,
        "random_forest": ForestEstimator,
        "gbdt": GBDTEstimator,
    }[family]


def model_to_dict(model: TrainedModel) -> dict:
    doc = {
        "format": FORMAT,
        "family": model.spec.family,
        "hyperparameters": model.spec.hyperparameters,
        "seed": model.spec.seed,
        "standardize": model.spec.standardize,
        "schema_hash": model.schema_hash,
        "fold_scores": [repr(float(s)) for s in model.fold_scores],
        "params": model.estimator.params(),
    }
    if model.scaler is not None:
        doc["scaler"] = {
            "mean": [repr(float(v)) for v in model.scaler.mean],
            "std": [repr(float(v)) for v in model.scaler.std],
        }
    return doc


def model_from_dict(doc: dict) -> TrainedModel:
    if doc.get("format") != FORMAT:
        raise ValueError(f"unsupported model artifact format {doc.get('format')!r}")
    spec = ModelSpec(
        family=doc["family"],
        hyperparameters=doc["hyperparameters"],
        seed=doc["seed"],
        standardize=doc["standardize"],
    )
    from .constructors import construct_kwargs

    cls = _estimator_class(spec.family)
    est = cls.from_params(doc["params"], construct_kwargs(spec))
    scaler = None
    if "scaler" in doc:
        scaler = Scaler(
            mean=np.array([float(v) for v in doc["scaler"]["mean"]]),
            std=np.array([float(v) for v in doc["scaler"]["std"]]),
        )
    return TrainedModel(
        spec=spec,
        schema_hash=doc["schema_hash"],
        estimator=est,
        scaler=scaler,
        fold_scores=[float(s) for s in doc["fold_scores"]],
    )


def save_model(model: TrainedModel, path) -> None:
    path = Path(path)
    path.write_text(
        json.dumps(model_to_dict(model), sort_keys=True, separators=(",", ":")) + "\n",
        encoding="utf-8",
    )


def load_model(path) -> TrainedModel:
    return model_from_dict(json.loads(Path(path).read_text(encoding="utf-8")))
