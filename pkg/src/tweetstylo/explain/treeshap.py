"""Exact Shapley attributions for the native tree ensembles.

Implements the polynomial-time path-weighting recursion over the parallel
tree arrays. Each path entry is [feature, zero_fraction, one_fraction,
weight]; EXTEND pushes a split onto the path and UNWIND removes one,
keeping the permutation weights consistent. The attribution for a leaf
distributes its value over the features along the path.

Attributions live in the model's margin space: leaf probability for a
single tree, mean leaf for a forest, log-odds for boosting. For every
row, base + sum(attributions) equals that margin.
"""

import numpy as np

from ..models.base import TREE_FAMILIES, TrainedModel
from ..models.tree import Tree


def _extend(path: list, pz: float, po: float, pi: int) -> list:
    m = [entry[:] for entry in path]
    l = len(m)
    m.append([pi, pz, po, 1.0 if l == 0 else 0.0])
    for i in range(l - 1, -1, -1):
        m[i + 1][3] += po * m[i][3] * (i + 1) / (l + 1)
        m[i][3] = pz * m[i][3] * (l - i) / (l + 1)
    return m


def _unwind(path: list, i0: int) -> list:
    # weights are indexed by subset size, so removing one feature's
    # (z, o) factors reshuffles the whole weight vector
    m = [entry[:] for entry in path]
    depth = len(m) - 1
    zi, oi = m[i0][1], m[i0][2]
    n = m[depth][3]
    for i in range(depth - 1, -1, -1):
        if oi != 0.0:
            t = m[i][3]
            m[i][3] = n * (depth + 1) / ((i + 1) * oi)
            n = t - m[i][3] * zi * (depth - i) / (depth + 1)
        else:
            m[i][3] = m[i][3] * (depth + 1) / (zi * (depth - i))
    for i in range(i0, depth):
        m[i][0], m[i][1], m[i][2] = m[i + 1][0], m[i + 1][1], m[i + 1][2]
    m.pop()
    return m


def _unwound_weight_sum(path: list, i0: int) -> float:
    """Total path weight after removing entry i0, without materializing."""
    depth = len(path) - 1
    zi, oi = path[i0][1], path[i0][2]
    n = path[depth][3]
    total = 0.0
    if oi != 0.0:
        for i in range(depth - 1, -1, -1):
            w = n / ((i + 1) * oi)
            total += w
            n = path[i][3] - w * zi * (depth - i)
    else:
        for i in range(depth - 1, -1, -1):
            total += path[i][3] / (zi * (depth - i))
    return total * (depth + 1)


def shap_single_tree(tree: Tree, x: np.ndarray, phi: np.ndarray) -> None:
    """Accumulate one tree's attributions for one sample into phi."""

    def recurse(node: int, path: list, pz: float, po: float, pi: int) -> None:
        path = _extend(path, pz, po, pi)
        if tree.is_leaf(node):
            value = tree.value[node]
            for i in range(1, len(path)):
                w = _unwound_weight_sum(path, i)
                phi[path[i][0]] += w * (path[i][2] - path[i][1]) * value
            return
        f = tree.feature[node]
        if x[f] <= tree.threshold[node]:
            hot, cold = tree.children_left[node], tree.children_right[node]
        else:
            hot, cold = tree.children_right[node], tree.children_left[node]
        iz = io = 1.0
        k = next((i for i in range(1, len(path)) if path[i][0] == f), None)
        if k is not None:
            iz, io = path[k][1], path[k][2]
            path = _unwind(path, k)
        r = tree.node_sample_weight[node]
        recurse(hot, path, iz * tree.node_sample_weight[hot] / r, io, f)
        recurse(cold, path, iz * tree.node_sample_weight[cold] / r, 0.0, f)

    recurse(0, [], 1.0, 1.0, -1)


def tree_expected_value(tree: Tree) -> float:
    """Coverage-weighted mean leaf value (the tree's background output)."""
    total = 0.0
    root_weight = tree.node_sample_weight[0]
    for node in range(tree.n_nodes):
        if tree.is_leaf(node):
            total += tree.value[node] * tree.node_sample_weight[node]
    return total / root_weight


def _ensemble(model: TrainedModel) -> tuple:
    """(trees, per-tree weight, constant offset) for a tree-family model."""
    family = model.spec.family
    est = model.estimator
    if family == "decision_tree":
        return [est.tree], 1.0, 0.0
    if family == "random_forest":
        return list(est.trees), 1.0 / len(est.trees), 0.0
    if family == "gbdt":
        return list(est.trees), 1.0, est.base_margin
    raise ValueError(
        f"tree_shap supports only tree families {sorted(TREE_FAMILIES)}; "
        f"got {family!r} (use permutation importance instead)"
    )


def ensemble_margin(model: TrainedModel, X) -> np.ndarray:
    """The additive output that SHAP decomposes, per row."""
    trees, weight, offset = _ensemble(model)
    Xp = model._prepare(X)
    out = np.full(len(Xp), offset)
    for t in trees:
        out += weight * t.predict_value(Xp)
    return out


def tree_shap(model: TrainedModel, X) -> tuple:
    """Per-sample attribution matrix and scalar base value.

    Returns (phi, base) with phi of shape (n_rows, n_features);
    base + phi.sum(axis=1) reproduces the ensemble margin.
    """
    trees, weight, offset = _ensemble(model)
    Xp = np.asarray(model._prepare(X), dtype=float)
    n, d = Xp.shape
    phi = np.zeros((n, d))
    for t in trees:
        tree_phi = np.zeros(d)
        for i in range(n):
            tree_phi[:] = 0.0
            shap_single_tree(t, Xp[i], tree_phi)
            phi[i] += weight * tree_phi
    base = offset + weight * sum(tree_expected_value(t) for t in trees)
    return phi, base
