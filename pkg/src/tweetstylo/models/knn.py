"""k-nearest-neighbours vote on Euclidean distance.

The estimator stores the training matrix verbatim; standardization is
applied outside (the fit facade always standardizes for this family).
Ties in distance are broken by training-row index, and a tied vote falls
back to the label of the single nearest neighbour.
"""

import numpy as np


class KNNEstimator:
    def __init__(self, k: int = 5):
        if k < 1:
            raise ValueError("k must be >= 1")
        self.k = int(k)
        self.X = None
        self.y = None

    def fit(self, X: np.ndarray, y: np.ndarray):
        self.X = np.asarray(X, dtype=float)
        self.y = np.asarray(y, dtype=int)
        return self

    def _neighbours(self, x: np.ndarray) -> np.ndarray:
        d2 = np.sum((self.X - x) ** 2, axis=1)
        # stable sort keeps (distance, index) ordering deterministic
        order = np.argsort(d2, kind="stable")
        return order[: min(self.k, len(order))]

    def predict_score(self, X: np.ndarray) -> np.ndarray:
        X = np.asarray(X, dtype=float)
        out = np.empty(len(X))
        for i, x in enumerate(X):
            idx = self._neighbours(x)
            votes = self.y[idx]
            frac = votes.mean()
            if frac == 0.5:
                # tied vote: the nearest neighbour decides
                frac = 0.5 + (0.5 if self.y[idx[0]] == 1 else -0.5) * 1e-6
            out[i] = frac
        return out

    def predict(self, X: np.ndarray) -> np.ndarray:
        # ties were already nudged off 0.5 by the nearest neighbour
        return (self.predict_score(X) >= 0.5).astype(int)

    def params(self) -> dict:
        return {"X": self.X.tolist(), "y": self.y.tolist()}

    @classmethod
    def from_params(cls, params: dict, hyper: dict):
        est = cls(**hyper)
        est.X = np.array(params["X"], dtype=float)
        est.y = np.array(params["y"], dtype=int)
        return est
