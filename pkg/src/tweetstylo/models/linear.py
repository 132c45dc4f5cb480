"""Linear-family estimators: logistic regression, ridge, LDA.

All operate on a feature matrix with an implicit intercept handled
internally; regularization never touches the intercept.
"""

import warnings

import numpy as np


def _sigmoid(z: np.ndarray) -> np.ndarray:
    out = np.empty_like(z)
    pos = z >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-z[pos]))
    ez = np.exp(z[~pos])
    out[~pos] = ez / (1.0 + ez)
    return out


class LogisticEstimator:
    """L2-regularized logistic regression fit by damped Newton iterations
    to a gradient-norm tolerance."""

    def __init__(self, l2: float = 1.0, tol: float = 1e-8, max_iter: int = 100):
        self.l2 = float(l2)
        self.tol = float(tol)
        self.max_iter = int(max_iter)
        self.coef = None
        self.intercept = 0.0

    def fit(self, X: np.ndarray, y: np.ndarray):
        n, d = X.shape
        Xb = np.hstack([X, np.ones((n, 1))])
        w = np.zeros(d + 1)
        mask = np.ones(d + 1)
        mask[-1] = 0.0  # intercept unpenalized
        for _ in range(self.max_iter):
            z = Xb @ w
            p = _sigmoid(z)
            g = Xb.T @ (p - y) + self.l2 * mask * w
            if np.max(np.abs(g)) < self.tol:
                break
            r = np.clip(p * (1.0 - p), 1e-12, None)
            H = (Xb * r[:, None]).T @ Xb + self.l2 * np.diag(mask)
            H[np.diag_indices_from(H)] += 1e-12
            step = np.linalg.solve(H, g)
            # halve the step until the penalized loss stops increasing
            loss0 = self._loss(Xb, y, w, mask)
            scale = 1.0
            for _ in range(30):
                cand = w - scale * step
                if self._loss(Xb, y, cand, mask) <= loss0:
                    break
                scale *= 0.5
            w = w - scale * step
        self.coef = w[:-1]
        self.intercept = float(w[-1])
        return self

    def _loss(self, Xb, y, w, mask):
        z = Xb @ w
        # log(1 + exp(-|z|)) formulation is overflow-safe
        nll = np.sum(np.logaddexp(0.0, z) - y * z)
        return nll + 0.5 * self.l2 * np.sum(mask * w * w)

    def margin(self, X: np.ndarray) -> np.ndarray:
        return X @ self.coef + self.intercept

    def predict_score(self, X: np.ndarray) -> np.ndarray:
        return _sigmoid(self.margin(X))

    def predict(self, X: np.ndarray) -> np.ndarray:
        return (self.predict_score(X) >= 0.5).astype(int)

    def params(self) -> dict:
        return {"coef": self.coef.tolist(), "intercept": self.intercept}

    @classmethod
    def from_params(cls, params: dict, hyper: dict):
        est = cls(**hyper)
        est.coef = np.array(params["coef"])
        est.intercept = float(params["intercept"])
        return est


class RidgeEstimator:
    """Closed-form regularized least squares on +/-1 targets."""

    def __init__(self, l2: float = 1.0):
        self.l2 = float(l2)
        self.coef = None
        self.intercept = 0.0

    def fit(self, X: np.ndarray, y: np.ndarray):
        n, d = X.shape
        t = np.where(y == 1, 1.0, -1.0)
        Xb = np.hstack([X, np.ones((n, 1))])
        reg = self.l2 * np.eye(d + 1)
        reg[-1, -1] = 0.0
        w = np.linalg.solve(Xb.T @ Xb + reg, Xb.T @ t)
        self.coef = w[:-1]
        self.intercept = float(w[-1])
        return self

    def predict_score(self, X: np.ndarray) -> np.ndarray:
        return X @ self.coef + self.intercept

    def predict(self, X: np.ndarray) -> np.ndarray:
        return (self.predict_score(X) >= 0.0).astype(int)

    def params(self) -> dict:
        return {"coef": self.coef.tolist(), "intercept": self.intercept}

    @classmethod
    def from_params(cls, params: dict, hyper: dict):
        est = cls(**hyper)
        est.coef = np.array(params["coef"])
        est.intercept = float(params["intercept"])
        return est


class LDAEstimator:
    """Pooled-covariance linear discriminant with shrinkage fallback."""

    def __init__(self, shrinkage: float = 0.0):
        self.shrinkage = float(shrinkage)
        self.coef = None
        self.intercept = 0.0

    def fit(self, X: np.ndarray, y: np.ndarray):
        X0 = X[y == 0]
        X1 = X[y == 1]
        n0, n1 = len(X0), len(X1)
        if n0 < 2 or n1 < 2:
            raise ValueError("each class needs at least 2 rows for LDA")
        mu0 = X0.mean(axis=0)
        mu1 = X1.mean(axis=0)
        s0 = np.cov(X0, rowvar=False, ddof=1)
        s1 = np.cov(X1, rowvar=False, ddof=1)
        cov = ((n0 - 1) * s0 + (n1 - 1) * s1) / (n0 + n1 - 2)
        cov = np.atleast_2d(cov)
        d = cov.shape[0]
        alpha = self.shrinkage
        target = np.trace(cov) / d if d else 1.0
        if target == 0.0:
            target = 1.0
        while True:
            shrunk = (1.0 - alpha) * cov + alpha * target * np.eye(d)
            try:
                np.linalg.cholesky(shrunk + 0.0)
                break
            except np.linalg.LinAlgError:
                next_alpha = 0.1 if alpha == 0.0 else min(1.0, alpha * 10.0)
                if next_alpha == alpha:
                    raise
                warnings.warn(
                    f"singular pooled covariance; shrinkage raised to {next_alpha}",
                    stacklevel=2,
                )
                alpha = next_alpha
        prior0 = n0 / (n0 + n1)
        prior1 = n1 / (n0 + n1)
        w = np.linalg.solve(shrunk, mu1 - mu0)
        self.coef = w
        self.intercept = float(
            -0.5 * (mu1 + mu0) @ w + np.log(prior1 / prior0)
        )
        return self

    def predict_score(self, X: np.ndarray) -> np.ndarray:
        return X @ self.coef + self.intercept

    def predict(self, X: np.ndarray) -> np.ndarray:
        return (self.predict_score(X) >= 0.0).astype(int)

    def params(self) -> dict:
        return {"coef": self.coef.tolist(), "intercept": self.intercept}

    @classmethod
    def from_params(cls, params: dict, hyper: dict):
        est = cls(**hyper)
        est.coef = np.array(params["coef"])
        est.intercept = float(params["intercept"])
        return est
