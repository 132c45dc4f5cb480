"""Stratified splitting, k-fold CV, and exhaustive grid search."""

import numpy as np

from ..rng import derive
from .base import ModelSpec
from .metrics import evaluate


def stratified_split(y, test_fraction: float = 0.15, seed: int = 0) -> tuple:
    """Per-class shuffle; train gets floor(n_c * train_fraction) rows,
    the remainder goes to the test side. Returns sorted index arrays."""
    y = np.asarray(y, dtype=int)
    if not 0.0 < test_fraction < 1.0:
        raise ValueError("test_fraction must be in (0, 1)")
    train_idx, test_idx = [], []
    for cls in (0, 1):
        members = np.where(y == cls)[0]
        if members.size < 2:
            raise ValueError(f"class {cls} has fewer than 2 rows")
        order = list(range(members.size))
        derive(seed, f"split:{cls}").shuffle(order)
        n_train = int(members.size * (1.0 - test_fraction))
        chosen = members[order]
        train_idx.extend(chosen[:n_train].tolist())
        test_idx.extend(chosen[n_train:].tolist())
    return np.array(sorted(train_idx)), np.array(sorted(test_idx))


def stratified_kfold(y, k: int = 5, seed: int = 0) -> list:
    """Round-robin deal of shuffled per-class indices into k folds.

    Returns a list of k (train_idx, val_idx) pairs. A fold whose
    validation part is single-class is a fatal configuration error.
    """
    y = np.asarray(y, dtype=int)
    if k < 2:
        raise ValueError("k must be at least 2")
    folds = [[] for _ in range(k)]
    for cls in (0, 1):
        members = np.where(y == cls)[0]
        order = list(range(members.size))
        derive(seed, f"fold:{cls}").shuffle(order)
        for slot, idx in enumerate(members[order]):
            folds[slot % k].append(int(idx))
    out = []
    all_idx = set(range(y.size))
    for i, fold in enumerate(folds):
        val = np.array(sorted(fold))
        if len(set(y[val].tolist())) < 2:
            raise ValueError(
                f"fold {i} is single-class (size {val.size}); "
                "use fewer folds or more data"
            )
        train = np.array(sorted(all_idx - set(fold)))
        out.append((train, val))
    return out


# Documented default hyperparameter grids, sized for desk-scale runs.
DEFAULT_GRIDS = {
    "logistic_regression": [{"l2": v} for v in (0.01, 0.1, 1.0)],
    "ridge": [{"l2": v} for v in (0.1, 1.0, 10.0)],
    "lda": [{"shrinkage": v} for v in (0.0, 0.1)],
    "gaussian_nb": [{}],
    "knn": [{"k": v} for v in (5, 11, 21)],
    "decision_tree": [{"max_depth": v} for v in (5, 10, None)],
    "random_forest": [
        {"n_estimators": n, "max_depth": d} for n in (100,) for d in (None, 10)
    ],
    "gbdt": [
        {"max_depth": d, "learning_rate": lr, "rounds": r}
        for d in (3, 5)
        for lr in (0.05, 0.1)
        for r in (200,)
    ],
}


def complexity_key(spec: ModelSpec) -> float:
    """Smaller = simpler; used to break mean-F1 ties in grid search."""
    h = spec.hyperparameters
    family = spec.family
    if family in ("logistic_regression", "ridge"):
        return 1.0 / h.get("l2", 1.0)
    if family == "lda":
        return -h.get("shrinkage", 0.0)
    if family == "gaussian_nb":
        return 0.0
    if family == "knn":
        return 1.0 / h.get("k", 5)
    depth = h.get("max_depth") or 1e9
    if family == "decision_tree":
        return float(depth)
    if family == "random_forest":
        return h.get("n_estimators", 100) * depth
    if family == "gbdt":
        return h.get("rounds", 200) * depth * h.get("learning_rate", 0.1)
    raise ValueError(f"unknown family {family!r}")


def cross_validate(specs: list, X, y, fit_fn, k: int = 5, seed: int = 0) -> tuple:
    """Exhaustive search over specs; best by mean fold F1.

    Ties break toward the smaller complexity key, then earlier grid
    position. Returns (best_spec, {spec_index: [fold f1 ...]}).
    """
    if not specs:
        raise ValueError("empty spec grid")
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=int)
    folds = stratified_kfold(y, k=k, seed=seed)
    all_scores = {}
    for si, spec in enumerate(specs):
        scores = []
        for train_idx, val_idx in folds:
            model = fit_fn(spec, X[train_idx], y[train_idx])
            pred = model.predict(X[val_idx])
            scores.append(evaluate(pred, y[val_idx]).f1)
        all_scores[si] = scores
    best_si = min(
        range(len(specs)),
        key=lambda si: (
            -float(np.mean(all_scores[si])),
            complexity_key(specs[si]),
            si,
        ),
    )
    return specs[best_si], all_scores
