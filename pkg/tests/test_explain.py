"""Attribution tests.

The load-bearing oracle here is `brute_shap`: literal Shapley-value
subset enumeration over the features a tree actually uses, with the
tree's coverage-weighted conditional expectation as the value function.
It is exponential and only feasible for small trees, which is exactly
why the fast path-weighting implementation must match it bit-for-near.
"""

import math
from itertools import combinations

import numpy as np
import pytest

from tweetstylo.explain import (
    ImportanceReport,
    ensemble_margin,
    idiom_heatmap_stats,
    permutation_importance,
    rank_columns,
    render_top20_svg,
    topk_f1_curve,
    tree_shap,
    tree_shap_report,
    write_heatmap_csv,
    write_importance_csv,
    write_shap_summary_csv,
    write_topk_csv,
)
from tweetstylo.explain.treeshap import _ensemble, tree_expected_value
from tweetstylo.models import ModelSpec, evaluate, fit
from tweetstylo.rng import derive
from tweetstylo.schema import user_columns

# ------------------------------------------------------------- the oracle


def conditional_value(tree, x, known: frozenset) -> float:
    """Tree output when only the features in `known` are fixed to x;
    unknown splits average both children by coverage."""

    def rec(node):
        if tree.is_leaf(node):
            return tree.value[node]
        f = tree.feature[node]
        left, right = tree.children_left[node], tree.children_right[node]
        if f in known:
            nxt = left if x[f] <= tree.threshold[node] else right
            return rec(nxt)
        w = tree.node_sample_weight
        return (w[left] * rec(left) + w[right] * rec(right)) / w[node]

    return rec(0)


def brute_shap(tree, x, n_features: int) -> np.ndarray:
    """Exact Shapley values by subset enumeration over used features."""
    used = sorted({f for f in tree.feature if f >= 0})
    phi = np.zeros(n_features)
    if not used:
        return phi
    n = len(used)
    cache = {}

    def v(subset: frozenset) -> float:
        if subset not in cache:
            cache[subset] = conditional_value(tree, x, subset)
        return cache[subset]

    for i in used:
        others = [f for f in used if f != i]
        for size in range(n):
            weight = (
                math.factorial(size) * math.factorial(n - size - 1) / math.factorial(n)
            )
            for combo in combinations(others, size):
                s = frozenset(combo)
                phi[i] += weight * (v(s | {i}) - v(s))
    return phi


def brute_ensemble_shap(model, x, n_features: int):
    trees, weight, offset = _ensemble(model)
    phi = np.zeros(n_features)
    base = offset
    for t in trees:
        phi += weight * brute_shap(t, x, n_features)
        base += weight * conditional_value(t, x, frozenset())
    return phi, base


def uniform_matrix(rng, n, d, lo=0.0, hi=1.0):
    return np.array([[lo + (hi - lo) * rng.random() for _ in range(d)] for _ in range(n)])


# ------------------------------------------------------------- tree shap


def test_stump_worked_example():
    X = np.array([[0.25], [0.75]])
    y = np.array([0, 1])
    model = fit(ModelSpec("decision_tree"), X, y)
    tree = model.estimator.tree
    assert tree.threshold[0] == 0.5 and tree.n_nodes == 3
    phi, base = tree_shap(model, np.array([[0.7]]))
    assert phi[0, 0] == pytest.approx(0.5, abs=1e-12)
    assert base == pytest.approx(0.5, abs=1e-12)


def test_unused_feature_gets_exact_zero():
    rng = derive(40, "null")
    X = uniform_matrix(rng, 60, 3)
    X[:, 1] = 7.0  # constant column can never host a split
    y = (X[:, 0] > 0.5).astype(int)
    model = fit(ModelSpec("decision_tree", {"max_depth": 4}), X, y)
    phi, _ = tree_shap(model, X[:20])
    assert np.all(phi[:, 1] == 0.0)


@pytest.mark.parametrize("family,hyper", [
    ("decision_tree", {"max_depth": 5}),
    ("random_forest", {"n_estimators": 10, "max_depth": 4}),
    ("gbdt", {"rounds": 15, "max_depth": 3}),
])
def test_local_accuracy(family, hyper):
    rng = derive(41, f"acc:{family}")
    X = uniform_matrix(rng, 80, 6)
    y = ((X[:, 0] + X[:, 3]) > 1.0).astype(int)
    model = fit(ModelSpec(family, hyper, seed=2), X, y)
    rows = X[:30]
    phi, base = tree_shap(model, rows)
    margins = ensemble_margin(model, rows)
    recon = base + phi.sum(axis=1)
    assert np.max(np.abs(recon - margins)) < 1e-6


@pytest.mark.parametrize("family,hyper", [
    ("decision_tree", {"max_depth": 4}),
    ("random_forest", {"n_estimators": 5, "max_depth": 3}),
    ("gbdt", {"rounds": 5, "max_depth": 3}),
])
def test_matches_brute_force_enumeration(family, hyper):
    rng = derive(42, f"brute:{family}")
    d = 6
    X = uniform_matrix(rng, 50, d)
    y = ((X[:, 0] > 0.4) & (X[:, 2] > 0.3)).astype(int)
    model = fit(ModelSpec(family, hyper, seed=9), X, y)
    rows = X[:8]
    phi, base = tree_shap(model, rows)
    for i, x in enumerate(rows):
        want_phi, want_base = brute_ensemble_shap(model, x, d)
        assert np.max(np.abs(phi[i] - want_phi)) < 1e-9
        assert abs(base - want_base) < 1e-9


def test_expected_value_is_coverage_mean():
    X = np.array([[0.25], [0.75], [0.8], [0.9]])
    y = np.array([0, 1, 1, 1])
    model = fit(ModelSpec("decision_tree"), X, y)
    # leaves: value 0 (1 row), value 1 (3 rows)
    assert tree_expected_value(model.estimator.tree) == pytest.approx(0.75)


def test_non_tree_family_rejected():
    rng = derive(43, "rej")
    X = uniform_matrix(rng, 30, 2)
    y = (X[:, 0] > 0.5).astype(int)
    model = fit(ModelSpec("logistic_regression"), X, y)
    with pytest.raises(ValueError, match="permutation"):
        tree_shap(model, X)


def test_report_ranks_by_mean_abs_shap():
    rng = derive(44, "rank")
    X = uniform_matrix(rng, 100, 4)
    y = (X[:, 2] > 0.5).astype(int)
    model = fit(ModelSpec("decision_tree", {"max_depth": 3}), X, y)
    report = tree_shap_report(model, X, ["a", "b", "c", "d"])
    assert report.ranking[0] == "c"
    assert report.shap_matrix.shape == (100, 4)
    assert report.base_value is not None


# ----------------------------------------------------------- permutation


def test_informative_feature_ranks_first():
    rng = derive(45, "perm1")
    X = uniform_matrix(rng, 400, 4)
    y = (X[:, 1] > 0.5).astype(int)
    model = fit(ModelSpec("logistic_regression"), X, y)
    report = permutation_importance(model, X, y, ["w", "x", "y", "z"], repeats=5, seed=0)
    assert report.ranking[0] == "x"
    top = report.attributions["x"]
    assert all(top > report.attributions[c] for c in ("w", "y", "z"))


def test_noise_feature_near_zero():
    rng = derive(46, "perm2")
    X = uniform_matrix(rng, 500, 3)
    y = (X[:, 0] > 0.5).astype(int)
    model = fit(ModelSpec("decision_tree", {"max_depth": 3}), X, y)
    report = permutation_importance(model, X, y, ["a", "b", "c"], repeats=10, seed=1)
    assert abs(report.attributions["b"]) < 0.02
    assert abs(report.attributions["c"]) < 0.02


def test_ignored_feature_exact_zero_drop():
    # the model provably never looks at column 1 (constant, unsplittable)
    rng = derive(47, "perm3")
    X = uniform_matrix(rng, 100, 2)
    X[:, 1] = 0.0
    y = (X[:, 0] > 0.5).astype(int)
    model = fit(ModelSpec("decision_tree"), X, y)
    report = permutation_importance(model, X, y, ["a", "b"], repeats=3, seed=2)
    assert report.attributions["b"] == 0.0


def test_permutation_deterministic():
    rng = derive(48, "perm4")
    X = uniform_matrix(rng, 60, 3)
    y = (X[:, 0] > 0.5).astype(int)
    model = fit(ModelSpec("knn", {"k": 3}), X, y)
    r1 = permutation_importance(model, X, y, ["a", "b", "c"], repeats=1, seed=5)
    r2 = permutation_importance(model, X, y, ["a", "b", "c"], repeats=1, seed=5)
    assert r1.attributions == r2.attributions and r1.ranking == r2.ranking


def test_ranking_tie_breaks_by_column_order():
    ranking = rank_columns(["a", "b", "c"], {"a": 1.0, "b": 1.0, "c": 2.0})
    assert ranking == ["c", "a", "b"]


def test_report_rejects_unknown_method():
    with pytest.raises(ValueError, match="method"):
        ImportanceReport(method="magic", columns=["a"], attributions={"a": 1.0})


# ----------------------------------------------------------------- top-k


def test_topk_curve_shape_and_full_identity():
    rng = derive(49, "topk")
    d = 10
    X = uniform_matrix(rng, 200, d)
    y = ((X[:, 0] + X[:, 1]) > 1.0).astype(int)
    tr = np.arange(0, 150)
    te = np.arange(150, 200)
    columns = [f"f{i}" for i in range(d)]
    spec = ModelSpec("decision_tree", {"max_depth": 4})
    model = fit(spec, X[tr], y[tr])
    report = permutation_importance(model, X[te], y[te], columns, repeats=3, seed=0)
    rows = topk_f1_curve(report.ranking, columns, X[tr], y[tr], X[te], y[te], [1, 5, 10], spec)
    assert len(rows) == 3
    assert [k for k, _ in rows] == [1, 5, 10]
    full_f1 = evaluate(model.predict(X[te]), y[te]).f1
    assert rows[-1][1] == full_f1  # k = all columns is the identical run


def test_topk_skips_zero_with_warning():
    rng = derive(50, "topk0")
    X = uniform_matrix(rng, 80, 3)
    y = (X[:, 0] > 0.5).astype(int)
    spec = ModelSpec("gaussian_nb")
    with pytest.warns(UserWarning, match="k=0"):
        rows = topk_f1_curve(
            ["f0", "f1", "f2"], ["f0", "f1", "f2"],
            X[:60], y[:60], X[60:], y[60:], [0, 2], spec,
        )
    assert [k for k, _ in rows] == [2]


def test_topk_rejects_k_above_column_count():
    with pytest.raises(ValueError, match="exceeds"):
        topk_f1_curve(
            ["f0"], ["f0"],
            np.zeros((4, 1)), np.array([0, 1, 0, 1]),
            np.zeros((2, 1)), np.array([0, 1]),
            [2], ModelSpec("gaussian_nb"),
        )


# --------------------------------------------------------------- heatmap


def heatmap_fixture(rng, n_per_group=3):
    columns = user_columns()
    X = uniform_matrix(rng, 2 * n_per_group, len(columns))
    y = np.array([0] * n_per_group + [1] * n_per_group)
    return X, y, columns


def test_heatmap_cell_count():
    rng = derive(51, "heat1")
    X, y, columns = heatmap_fixture(rng)
    rows = idiom_heatmap_stats(X, y, columns)
    assert len(rows) == 44 * 7 * 2 == 616
    idioms = {r[0] for r in rows}
    assert len(idioms) == 44
    assert {r[2] for r in rows} == {"control", "conspiracy"}


def test_heatmap_constant_cell_value():
    rng = derive(52, "heat2")
    X, y, columns = heatmap_fixture(rng)
    idiom_cols = [i for i, c in enumerate(columns) if "(idiom_" in c]
    X[:, idiom_cols] = 0.4
    rows = idiom_heatmap_stats(X, y, columns)
    assert all(v == pytest.approx(0.4) for _, _, _, v in rows)


def test_heatmap_identical_groups_match():
    rng = derive(53, "heat3")
    X, y, columns = heatmap_fixture(rng)
    X[3:] = X[:3]  # group 1 rows copy group 0 rows
    rows = idiom_heatmap_stats(X, y, columns)
    by_cell = {}
    for idiom, stat, group, value in rows:
        by_cell.setdefault((idiom, stat), {})[group] = value
    for groups in by_cell.values():
        assert groups["control"] == groups["conspiracy"]


def test_heatmap_missing_columns_fatal():
    with pytest.raises(ValueError, match="idiom"):
        idiom_heatmap_stats(np.zeros((4, 3)), np.array([0, 0, 1, 1]), ["a", "b", "c"])


# --------------------------------------------------------------- exports


def test_csv_and_svg_outputs(tmp_path):
    rng = derive(54, "export")
    X = uniform_matrix(rng, 40, 3)
    y = (X[:, 0] > 0.5).astype(int)
    model = fit(ModelSpec("decision_tree", {"max_depth": 3}), X, y)
    report = tree_shap_report(model, X, ["alpha", "beta", "gamma"])

    imp = tmp_path / "importance.csv"
    write_importance_csv(report, imp)
    lines = imp.read_text().splitlines()
    assert lines[0] == "feature,score,rank"
    assert len(lines) == 4
    assert lines[1].endswith(",1")

    summary = tmp_path / "shap_summary.csv"
    write_shap_summary_csv(report, X, summary)
    lines = summary.read_text().splitlines()
    assert lines[0] == "feature,sample_id,shap,feature_value"
    assert len(lines) == 1 + 3 * 40

    topk = tmp_path / "topk_f1.csv"
    write_topk_csv([(1, 0.5), (2, 0.75)], topk)
    assert topk.read_text().splitlines() == ["k,f1", "1,0.5", "2,0.75"]

    heat = tmp_path / "idiom_heatmap.csv"
    write_heatmap_csv([("Wake up", "mean", "control", 0.25)], heat)
    assert heat.read_text().splitlines()[1] == '"Wake up",mean,control,0.25'

    svg_path = tmp_path / "top20.svg"
    svg = render_top20_svg(report, svg_path)
    assert svg.startswith("<svg") and svg.rstrip().endswith("</svg>")
    assert svg.count("<rect") == 3  # one bar per ranked feature
    assert svg_path.read_text() == svg
    # regeneration is byte-identical
    assert render_top20_svg(report) == svg
