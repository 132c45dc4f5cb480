"""Gradient-boosted trees with second-order (Newton) leaf values.

Each round fits one regression tree to the logistic gradients.  Split
search runs on per-feature histograms: when a column has at most `bins`
distinct values the cut points are exactly those values (minus the
maximum), otherwise evenly spaced quantiles.  Either way a bin index b
satisfies `bin(x) <= b  iff  x <= cut[b]`, so stored thresholds are raw
cut values and prediction never needs the binning tables.

Leaf values are already scaled by the learning rate, so the ensemble
margin is plain `base + sum(tree values)`.
"""

import numpy as np

from .tree import Tree


def _sigmoid(z: np.ndarray) -> np.ndarray:
    out = np.empty_like(z)
    pos = z >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-z[pos]))
    ez = np.exp(z[~pos])
    out[~pos] = ez / (1.0 + ez)
    return out


class _BinnedMatrix:
    """Per-column discretization of the training matrix."""

    def __init__(self, X: np.ndarray, bins: int):
        n, d = X.shape
        self.cut_lists = []
        n_bins = np.empty(d, dtype=np.int64)
        for f in range(d):
            vals = np.unique(X[:, f])
            if len(vals) <= bins:
                cuts = vals[:-1]
            else:
                qs = np.arange(1, bins) / bins
                cuts = np.unique(np.quantile(X[:, f], qs))
            self.cut_lists.append(cuts)
            n_bins[f] = len(cuts) + 1
        self.offsets = np.concatenate([[0], np.cumsum(n_bins)])
        self.total_bins = int(self.offsets[-1])
        self.codes = np.empty((n, d), dtype=np.int64)
        for f in range(d):
            self.codes[:, f] = np.searchsorted(self.cut_lists[f], X[:, f], side="left")
        self.flat = self.codes + self.offsets[:d]
        # threshold value for a split "bin <= b"; NaN marks the last bin
        # of each feature, which cannot host a split
        self.cut_flat = np.full(self.total_bins, np.nan)
        for f in range(d):
            lo = self.offsets[f]
            self.cut_flat[lo : lo + len(self.cut_lists[f])] = self.cut_lists[f]
        self.splittable = ~np.isnan(self.cut_flat)
        # maps a flat bin position back to its feature column
        self.fmap = np.repeat(np.arange(d), n_bins)


def _best_split(binned: _BinnedMatrix, rows: np.ndarray, g: np.ndarray, h: np.ndarray, lam: float):
    """Highest-gain (feature, bin) for one node, or None.

    Ties resolve to the lowest flat bin position, i.e. lowest feature
    index then lowest threshold.
    """
    sub = binned.flat[rows]
    r, d = sub.shape
    idx = sub.ravel()
    g_hist = np.bincount(idx, weights=np.repeat(g[rows], d), minlength=binned.total_bins)
    h_hist = np.bincount(idx, weights=np.repeat(h[rows], d), minlength=binned.total_bins)
    c_hist = np.bincount(idx, minlength=binned.total_bins)
    # per-feature prefix sums out of one global cumsum
    cs_g = np.cumsum(g_hist)
    cs_h = np.cumsum(h_hist)
    cs_c = np.cumsum(c_hist)
    starts = binned.offsets[:-1]
    base_g = np.where(starts > 0, cs_g[starts - 1], 0.0)
    base_h = np.where(starts > 0, cs_h[starts - 1], 0.0)
    base_c = np.where(starts > 0, cs_c[starts - 1], 0)
    fm = binned.fmap
    GL = cs_g - base_g[fm]
    HL = cs_h - base_h[fm]
    CL = cs_c - base_c[fm]
    G = float(g[rows].sum())
    H = float(h[rows].sum())
    GR = G - GL
    HR = H - HL
    CR = r - CL
    valid = binned.splittable & (CL >= 1) & (CR >= 1)
    if not valid.any():
        return None
    parent = G * G / (H + lam)
    gain = 0.5 * (GL * GL / (HL + lam) + GR * GR / (HR + lam) - parent)
    gain[~valid] = -np.inf
    j = int(np.argmax(gain))
    if gain[j] <= 0.0:
        return None
    f = int(fm[j])
    return f, int(j - binned.offsets[f]), float(binned.cut_flat[j])


def _grow_round(
    binned: _BinnedMatrix,
    g: np.ndarray,
    h: np.ndarray,
    max_depth: int,
    learning_rate: float,
    lam: float,
) -> tuple:
    """One boosting tree, grown level by level. Returns (tree, margin_delta)."""
    n = len(g)
    tree = Tree()
    contrib = np.empty(n)

    def leaf_value(rows):
        return -learning_rate * g[rows].sum() / (h[rows].sum() + lam)

    root_rows = np.arange(n)
    root = tree.add_node(leaf_value(root_rows), n)
    frontier = [(root, root_rows)]
    for depth in range(max_depth):
        next_frontier = []
        for node, rows in frontier:
            split = _best_split(binned, rows, g, h, lam) if len(rows) >= 2 else None
            if split is None:
                contrib[rows] = tree.value[node]
                continue
            f, b, thr = split
            mask = binned.codes[rows, f] <= b
            left_rows = rows[mask]
            right_rows = rows[~mask]
            left = tree.add_node(leaf_value(left_rows), len(left_rows))
            right = tree.add_node(leaf_value(right_rows), len(right_rows))
            tree.set_split(node, f, thr, left, right)
            next_frontier.append((left, left_rows))
            next_frontier.append((right, right_rows))
        frontier = next_frontier
        if not frontier:
            break
    for node, rows in frontier:
        contrib[rows] = tree.value[node]
    return tree, contrib


class GBDTEstimator:
    def __init__(
        self,
        rounds: int = 200,
        max_depth: int = 3,
        learning_rate: float = 0.1,
        reg_lambda: float = 1.0,
        bins: int = 64,
    ):
        self.rounds = int(rounds)
        self.max_depth = int(max_depth)
        self.learning_rate = float(learning_rate)
        self.reg_lambda = float(reg_lambda)
        self.bins = int(bins)
        self.base_margin = 0.0
        self.trees: list[Tree] = []

    def fit(self, X: np.ndarray, y: np.ndarray):
        X = np.asarray(X, dtype=float)
        y = np.asarray(y, dtype=float)
        n = len(y)
        p1 = min(max(y.mean(), 1e-6), 1.0 - 1e-6)
        self.base_margin = float(np.log(p1 / (1.0 - p1)))
        binned = _BinnedMatrix(X, self.bins)
        F = np.full(n, self.base_margin)
        self.trees = []
        for _ in range(self.rounds):
            p = _sigmoid(F)
            g = p - y
            h = p * (1.0 - p)
            tree, contrib = _grow_round(
                binned, g, h, self.max_depth, self.learning_rate, self.reg_lambda
            )
            self.trees.append(tree)
            F += contrib
        return self

    def margin(self, X: np.ndarray) -> np.ndarray:
        X = np.asarray(X, dtype=float)
        out = np.full(len(X), self.base_margin)
        for t in self.trees:
            out += t.predict_value(X)
        return out

    def predict_score(self, X: np.ndarray) -> np.ndarray:
        return _sigmoid(self.margin(X))

    def predict(self, X: np.ndarray) -> np.ndarray:
        return (self.predict_score(X) >= 0.5).astype(int)

    def params(self) -> dict:
        return {
            "base_margin": repr(self.base_margin),
            "trees": [t.to_dict() for t in self.trees],
        }

    @classmethod
    def from_params(cls, params: dict, hyper: dict):
        est = cls(**hyper)
        est.base_margin = float(params["base_margin"])
        est.trees = [Tree.from_dict(d) for d in params["trees"]]
        return est
