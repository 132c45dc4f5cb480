"""Bagged forest of Gini CARTs with per-node feature subsampling."""

import math

import numpy as np

from ..rng import derive
from .tree import Tree, build_cart


class ForestEstimator:
    def __init__(
        self,
        n_estimators: int = 100,
        max_depth: int | None = None,
        max_features: str = "sqrt",
        seed: int = 0,
    ):
        self.n_estimators = int(n_estimators)
        self.max_depth = max_depth
        self.max_features = max_features
        self.seed = int(seed)
        self.trees: list[Tree] = []

    def _n_candidates(self, d: int) -> int:
        if self.max_features == "sqrt":
            return max(1, int(math.isqrt(d)))
        if self.max_features == "all":
            return d
        return max(1, min(d, int(self.max_features)))

    def fit(self, X: np.ndarray, y: np.ndarray):
        X = np.asarray(X, dtype=float)
        y = np.asarray(y, dtype=float)
        n, d = X.shape
        m = self._n_candidates(d)
        self.trees = []
        for i in range(self.n_estimators):
            rng = derive(self.seed, f"tree:{i}")
            boot = rng.choices_with_replacement(n, n)
            if m == d:
                sampler = None
            else:
                def sampler(n_features, _rng=rng, _m=m):
                    return _rng.sample_indices(n_features, _m)

            self.trees.append(
                build_cart(
                    X[boot],
                    y[boot],
                    max_depth=self.max_depth,
                    feature_sampler=sampler,
                )
            )
        return self

    def predict_score(self, X: np.ndarray) -> np.ndarray:
        X = np.asarray(X, dtype=float)
        total = np.zeros(len(X))
        for t in self.trees:
            total += t.predict_value(X)
        return total / len(self.trees)

    def predict(self, X: np.ndarray) -> np.ndarray:
        return (self.predict_score(X) >= 0.5).astype(int)

    def params(self) -> dict:
        return {"trees": [t.to_dict() for t in self.trees]}

    @classmethod
    def from_params(cls, params: dict, hyper: dict):
        est = cls(**hyper)
        est.trees = [Tree.from_dict(d) for d in params["trees"]]
        return est
