"""Gaussian naive Bayes with a variance floor."""

import numpy as np


class GaussianNBEstimator:
    def __init__(self, var_smoothing: float = 1e-9):
        self.var_smoothing = float(var_smoothing)
        self.theta = None   # (2, d) per-class means
        self.var = None     # (2, d) per-class variances
        self.log_prior = None

    def fit(self, X: np.ndarray, y: np.ndarray):
        n, d = X.shape
        self.theta = np.zeros((2, d))
        self.var = np.zeros((2, d))
        counts = np.zeros(2)
        for c in (0, 1):
            Xc = X[y == c]
            counts[c] = len(Xc)
            self.theta[c] = Xc.mean(axis=0)
            self.var[c] = Xc.var(axis=0)
        # floor relative to the largest feature variance overall
        floor = self.var_smoothing * max(X.var(axis=0).max(), 1e-12)
        self.var = np.maximum(self.var, floor)
        self.log_prior = np.log(counts / n)
        return self

    def _joint_log_likelihood(self, X: np.ndarray) -> np.ndarray:
        jll = np.zeros((len(X), 2))
        for c in (0, 1):
            diff = X - self.theta[c]
            ll = -0.5 * np.sum(
                np.log(2.0 * np.pi * self.var[c]) + diff * diff / self.var[c],
                axis=1,
            )
            jll[:, c] = self.log_prior[c] + ll
        return jll

    def predict_score(self, X: np.ndarray) -> np.ndarray:
        jll = self._joint_log_likelihood(X)
        # renormalize in log space to avoid overflow
        m = jll.max(axis=1, keepdims=True)
        p = np.exp(jll - m)
        return p[:, 1] / p.sum(axis=1)

    def predict(self, X: np.ndarray) -> np.ndarray:
        return (self.predict_score(X) >= 0.5).astype(int)

    def params(self) -> dict:
        return {
            "theta": self.theta.tolist(),
            "var": self.var.tolist(),
            "log_prior": self.log_prior.tolist(),
        }

    @classmethod
    def from_params(cls, params: dict, hyper: dict):
        est = cls(**hyper)
        est.theta = np.array(params["theta"])
        est.var = np.array(params["var"])
        est.log_prior = np.array(params["log_prior"])
        return est
