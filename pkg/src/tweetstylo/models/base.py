"""Shared model plumbing: specs, standardization, the trained wrapper."""

from dataclasses import dataclass, field

import numpy as np

FAMILIES = (
    "logistic_regression",
    "ridge",
    "lda",
    "gaussian_nb",
    "knn",
    "decision_tree",
    "random_forest",
    "gbdt",
)

TREE_FAMILIES = frozenset({"decision_tree", "random_forest", "gbdt"})

# Families that standardize internally regardless of the spec flag.
ALWAYS_STANDARDIZE = frozenset({"knn"})

HYPERPARAMETER_KEYS = {
    "logistic_regression": frozenset({"l2", "tol", "max_iter"}),
    "ridge": frozenset({"l2"}),
    "lda": frozenset({"shrinkage"}),
    "gaussian_nb": frozenset({"var_smoothing"}),
    "knn": frozenset({"k"}),
    "decision_tree": frozenset({"max_depth", "min_samples_leaf"}),
    "random_forest": frozenset({"n_estimators", "max_depth", "max_features"}),
    "gbdt": frozenset({"rounds", "max_depth", "learning_rate", "reg_lambda", "bins"}),
}


def _check_hyper(family: str, hyper: dict) -> None:
    unknown = set(hyper) - HYPERPARAMETER_KEYS[family]
    if unknown:
        raise ValueError(
            f"unknown hyperparameters for {family}: {sorted(unknown)}"
        )
    for key in ("l2", "shrinkage", "var_smoothing"):
        if key in hyper and not hyper[key] >= 0:
            raise ValueError(f"{key} must be >= 0")
    for key in ("k", "n_estimators", "rounds", "min_samples_leaf", "bins", "max_iter"):
        if key in hyper and not hyper[key] >= 1:
            raise ValueError(f"{key} must be >= 1")
    for key in ("learning_rate", "tol"):
        if key in hyper and not hyper[key] > 0:
            raise ValueError(f"{key} must be > 0")
    depth = hyper.get("max_depth")
    if depth is not None and "max_depth" in hyper and not depth >= 1:
        raise ValueError("max_depth must be None or >= 1")


@dataclass(frozen=True)
class ModelSpec:
    family: str
    hyperparameters: dict = field(default_factory=dict)
    seed: int = 0
    standardize: bool = False

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown model family {self.family!r}")
        _check_hyper(self.family, self.hyperparameters)

    def with_seed(self, seed: int) -> "ModelSpec":
        return ModelSpec(self.family, dict(self.hyperparameters), seed, self.standardize)

    def key(self) -> tuple:
        return (self.family, tuple(sorted(self.hyperparameters.items())), self.standardize)


@dataclass
class Scaler:
    mean: np.ndarray
    std: np.ndarray

    @classmethod
    def fit(cls, X: np.ndarray) -> "Scaler":
        mean = X.mean(axis=0)
        std = X.std(axis=0)
        std = np.where(std == 0.0, 1.0, std)
        return cls(mean=mean, std=std)

    def transform(self, X: np.ndarray) -> np.ndarray:
        return (X - self.mean) / self.std


@dataclass
class TrainedModel:
    spec: ModelSpec
    schema_hash: str
    estimator: object
    scaler: Scaler = None
    fold_scores: list = field(default_factory=list)

    def _check(self, schema_hash: str):
        if schema_hash is not None and schema_hash != self.schema_hash:
            raise ValueError(
                f"feature schema mismatch: model trained on {self.schema_hash[:12]}.., "
                f"asked to predict on {schema_hash[:12]}.."
            )

    def _prepare(self, X: np.ndarray) -> np.ndarray:
        X = np.asarray(X, dtype=float)
        if self.scaler is not None:
            X = self.scaler.transform(X)
        return X

    def predict_score(self, X, schema_hash: str = None) -> np.ndarray:
        self._check(schema_hash)
        return self.estimator.predict_score(self._prepare(X))

    def predict(self, X, schema_hash: str = None) -> np.ndarray:
        self._check(schema_hash)
        return self.estimator.predict(self._prepare(X))


def validate_training_matrix(X: np.ndarray, y: np.ndarray, columns: list = None):
    if X.ndim != 2:
        raise ValueError("training matrix must be 2-D")
    if X.shape[0] != y.shape[0]:
        raise ValueError("row/label count mismatch")
    finite = np.isfinite(X).all(axis=0)
    if not finite.all():
        bad = np.where(~finite)[0]
        names = (
            ", ".join(columns[i] for i in bad[:10])
            if columns is not None
            else ", ".join(map(str, bad[:10]))
        )
        raise ValueError(f"non-finite values in feature columns: {names}")
    classes = set(np.unique(y).tolist())
    if not classes <= {0, 1}:
        raise ValueError(f"labels must be binary 0/1, got {sorted(classes)}")
