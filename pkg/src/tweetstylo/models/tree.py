"""Binary decision trees stored as parallel arrays.

The array layout (children_left, children_right, feature, threshold,
value, node_sample_weight) is shared by the CART classifier, the bagged
forest, the boosted ensemble, and the SHAP attribution code.  The split
convention everywhere is `x[feature] <= threshold` goes left; leaves
have feature -1 and children -1.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

LEAF = -1


@dataclass
class Tree:
    children_left: list = field(default_factory=list)
    children_right: list = field(default_factory=list)
    feature: list = field(default_factory=list)
    threshold: list = field(default_factory=list)
    value: list = field(default_factory=list)
    node_sample_weight: list = field(default_factory=list)

    def add_node(self, value: float, weight: float) -> int:
        """Append a leaf node and return its index."""
        self.children_left.append(LEAF)
        self.children_right.append(LEAF)
        self.feature.append(LEAF)
        self.threshold.append(float("nan"))
        self.value.append(float(value))
        self.node_sample_weight.append(float(weight))
        return len(self.value) - 1

    def set_split(self, node: int, feature: int, threshold: float, left: int, right: int) -> None:
        self.children_left[node] = left
        self.children_right[node] = right
        self.feature[node] = feature
        self.threshold[node] = float(threshold)

    @property
    def n_nodes(self) -> int:
        return len(self.value)

    def is_leaf(self, node: int) -> bool:
        return self.children_left[node] == LEAF

    def leaf_index(self, x: np.ndarray) -> int:
        node = 0
        while not self.is_leaf(node):
            if x[self.feature[node]] <= self.threshold[node]:
                node = self.children_left[node]
            else:
                node = self.children_right[node]
        return node

    def predict_value(self, X: np.ndarray) -> np.ndarray:
        X = np.asarray(X, dtype=float)
        return np.array([self.value[self.leaf_index(x)] for x in X])

    def max_depth(self) -> int:
        def depth(node: int) -> int:
            if self.is_leaf(node):
                return 0
            return 1 + max(depth(self.children_left[node]), depth(self.children_right[node]))

        return depth(0) if self.n_nodes else 0

    def to_dict(self) -> dict:
        return {
            "children_left": list(self.children_left),
            "children_right": list(self.children_right),
            "feature": list(self.feature),
            "threshold": [repr(t) for t in self.threshold],
            "value": [repr(v) for v in self.value],
            "node_sample_weight": list(self.node_sample_weight),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Tree":
        return cls(
            children_left=list(d["children_left"]),
            children_right=list(d["children_right"]),
            feature=list(d["feature"]),
            threshold=[float(t) for t in d["threshold"]],
            value=[float(v) for v in d["value"]],
            node_sample_weight=list(d["node_sample_weight"]),
        )


def _gini(pos: float, total: float) -> float:
    if total == 0:
        return 0.0
    p = pos / total
    return 2.0 * p * (1.0 - p)


def _best_split_on_feature(x: np.ndarray, y: np.ndarray):
    """Best Gini split on one column: (impurity_decrease, threshold) or None.

    Thresholds are midpoints between consecutive distinct sorted values.
    """
    order = np.argsort(x, kind="stable")
    xs = x[order]
    ys = y[order]
    n = len(xs)
    total_pos = ys.sum()
    parent = _gini(total_pos, n)
    prefix_pos = np.cumsum(ys)
    best = None
    for i in range(n - 1):
        if xs[i] == xs[i + 1]:
            continue
        nl = i + 1
        nr = n - nl
        pl = prefix_pos[i]
        pr = total_pos - pl
        child = (nl * _gini(pl, nl) + nr * _gini(pr, nr)) / n
        gain = parent - child
        thr = (xs[i] + xs[i + 1]) / 2.0
        if best is None or gain > best[0]:
            best = (gain, thr)
    return best


def build_cart(
    X: np.ndarray,
    y: np.ndarray,
    max_depth: int | None = None,
    min_samples_split: int = 2,
    min_samples_leaf: int = 1,
    feature_sampler=None,
) -> Tree:
    """Grow a Gini CART on binary labels, depth-first.

    `feature_sampler(n_features)` may return the candidate column indices
    for one node (bagged forests pass a random subsampler); the winning
    split maximizes impurity decrease with ties broken by lowest feature
    index then lowest threshold.  Leaf values are positive-class
    fractions.
    """
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=float)
    n, d = X.shape
    tree = Tree()

    def grow(rows: np.ndarray, depth: int) -> int:
        ys = y[rows]
        node = tree.add_node(ys.mean(), len(rows))
        if (
            len(rows) < min_samples_split
            or (max_depth is not None and depth >= max_depth)
            or ys.min() == ys.max()
        ):
            return node
        if feature_sampler is None:
            candidates = range(d)
        else:
            candidates = sorted(feature_sampler(d))
        best = None  # (gain, feature, threshold)
        for f in candidates:
            found = _best_split_on_feature(X[rows, f], ys)
            if found is None:
                continue
            gain, thr = found
            # strict > keeps the first winner on exact ties; features are
            # scanned in increasing index order and thresholds in
            # increasing value order, so ties resolve to the lowest
            # feature index, then the lowest threshold
            if best is None or gain > best[0]:
                best = (gain, f, thr)
        if best is None or best[0] <= 0.0:
            return node
        _, f, thr = best
        mask = X[rows, f] <= thr
        left_rows = rows[mask]
        right_rows = rows[~mask]
        if len(left_rows) < min_samples_leaf or len(right_rows) < min_samples_leaf:
            return node
        left = grow(left_rows, depth + 1)
        right = grow(right_rows, depth + 1)
        tree.set_split(node, f, thr, left, right)
        return node

    grow(np.arange(n), 0)
    return tree


class CARTEstimator:
    """Single decision tree classifier."""

    def __init__(self, max_depth: int | None = None, min_samples_leaf: int = 1):
        self.max_depth = max_depth
        self.min_samples_leaf = int(min_samples_leaf)
        self.tree = None

    def fit(self, X: np.ndarray, y: np.ndarray):
        self.tree = build_cart(
            X, y, max_depth=self.max_depth, min_samples_leaf=self.min_samples_leaf
        )
        return self

    def predict_score(self, X: np.ndarray) -> np.ndarray:
        return self.tree.predict_value(X)

    def predict(self, X: np.ndarray) -> np.ndarray:
        return (self.predict_score(X) >= 0.5).astype(int)

    def params(self) -> dict:
        return {"tree": self.tree.to_dict()}

    @classmethod
    def from_params(cls, params: dict, hyper: dict):
        est = cls(**hyper)
        est.tree = Tree.from_dict(params["tree"])
        return est
