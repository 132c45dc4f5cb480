"""Classifier-family tests.

Oracles here come from three places: hand-computable examples (exact
confusion counts, separable data), closed-form behaviour (score at the
decision boundary, nearest-self), and structural invariants (seeded
determinism, scale invariance of trees, L2 monotonicity).
"""

import json
import math
import warnings

import numpy as np
import pytest

from tweetstylo.models import (
    DEFAULT_GRIDS,
    FAMILIES,
    ModelSpec,
    complexity_key,
    cross_validate,
    evaluate,
    fit,
    load_model,
    save_model,
    stratified_kfold,
    stratified_split,
    tune_and_fit,
)
from tweetstylo.rng import derive


def uniform_matrix(rng, n, d, lo=-1.0, hi=1.0):
    return np.array([[lo + (hi - lo) * rng.random() for _ in range(d)] for _ in range(n)])


def gaussian_matrix(rng, n, d, mean=0.0, std=1.0):
    vals = []
    for _ in range(n * d):
        # Box-Muller on two uniforms
        u1 = max(rng.random(), 1e-12)
        u2 = rng.random()
        vals.append(math.sqrt(-2.0 * math.log(u1)) * math.cos(2.0 * math.pi * u2))
    return mean + std * np.array(vals).reshape(n, d)


def blobs(rng, n_per_class, d, sep=3.0):
    X0 = gaussian_matrix(rng, n_per_class, d, mean=-sep)
    X1 = gaussian_matrix(rng, n_per_class, d, mean=+sep)
    X = np.vstack([X0, X1])
    y = np.array([0] * n_per_class + [1] * n_per_class)
    return X, y


# ---------------------------------------------------------------- fitting


def test_logistic_separable_1d():
    rng = derive(11, "logi")
    x = np.array([rng.random() * 2 - 1 for _ in range(200)])
    x = np.where(np.abs(x) < 0.05, x + 0.1, x)  # keep a margin around 0
    X = x.reshape(-1, 1)
    y = (x > 0).astype(int)
    tr, te = stratified_split(y, 0.25, seed=3)
    model = fit(ModelSpec("logistic_regression", {"l2": 0.01}), X[tr], y[tr])
    assert np.array_equal(model.predict(X[te]), y[te])


def test_logistic_score_at_boundary_is_half():
    rng = derive(12, "logi2")
    X, y = blobs(rng, 40, 2)
    model = fit(ModelSpec("logistic_regression"), X, y)
    est = model.estimator
    # a point with zero margin scores exactly sigmoid(0)
    x0 = -est.intercept / est.coef[0]
    pt = np.array([[x0, 0.0]])
    margin = est.margin(pt)[0] - est.coef[1] * 0.0
    pt[0, 0] -= margin / est.coef[0] if est.coef[0] != 0 else 0.0
    score = model.predict_score(pt)[0]
    assert abs(score - 0.5) < 1e-9


def test_ridge_separable_and_sign_threshold():
    rng = derive(13, "ridge")
    X, y = blobs(rng, 50, 3)
    model = fit(ModelSpec("ridge", {"l2": 1.0}), X, y)
    assert evaluate(model.predict(X), y).f1 == 1.0
    # label rule is margin >= 0
    scores = model.predict_score(X)
    assert np.array_equal(model.predict(X), (scores >= 0.0).astype(int))


@pytest.mark.parametrize("family", ["ridge", "logistic_regression"])
def test_l2_doubling_never_grows_coefficients(family):
    rng = derive(14, f"l2:{family}")
    X, y = blobs(rng, 60, 4, sep=1.0)
    norms = []
    for l2 in (0.25, 0.5, 1.0, 2.0, 4.0, 8.0):
        model = fit(ModelSpec(family, {"l2": l2}), X, y)
        norms.append(float(np.linalg.norm(model.estimator.coef)))
    for a, b in zip(norms, norms[1:]):
        assert b <= a + 1e-9


def test_lda_blobs():
    rng = derive(15, "lda")
    X, y = blobs(rng, 80, 3)
    tr, te = stratified_split(y, 0.2, seed=1)
    model = fit(ModelSpec("lda"), X[tr], y[tr])
    assert evaluate(model.predict(X[te]), y[te]).f1 == 1.0


def test_lda_singular_covariance_falls_back_to_shrinkage():
    rng = derive(16, "lda2")
    X, y = blobs(rng, 30, 2)
    X = np.hstack([X, X[:, :1]])  # duplicated column makes pooled cov singular
    with pytest.warns(UserWarning, match="shrinkage"):
        model = fit(ModelSpec("lda", {"shrinkage": 0.0}), X, y)
    assert evaluate(model.predict(X), y).f1 > 0.95


def test_gaussian_nb_blobs_at_pm3():
    rng = derive(17, "gnb")
    X, y = blobs(rng, 400, 2, sep=3.0)
    tr, te = stratified_split(y, 0.25, seed=2)
    model = fit(ModelSpec("gaussian_nb"), X[tr], y[tr])
    acc = (model.predict(X[te]) == y[te]).mean()
    assert acc > 0.99


def test_knn_k1_returns_own_label():
    rng = derive(18, "knn")
    X = uniform_matrix(rng, 60, 3)
    y = np.array([i % 2 for i in range(60)])
    model = fit(ModelSpec("knn", {"k": 1}), X, y)
    assert np.array_equal(model.predict(X), y)


def test_knn_tied_vote_goes_to_nearest():
    X = np.array([[0.0], [1.0]])
    y = np.array([0, 1])
    model = fit(ModelSpec("knn", {"k": 2}), X, y)
    assert model.predict(np.array([[0.4]]))[0] == 0
    assert model.predict(np.array([[0.6]]))[0] == 1


def test_decision_tree_memorizes_training_rows():
    rng = derive(19, "cart")
    X = uniform_matrix(rng, 100, 5)
    y = ((X[:, 0] + X[:, 2]) > 0).astype(int)
    model = fit(ModelSpec("decision_tree", {"max_depth": None}), X, y)
    assert np.array_equal(model.predict(X), y)


def test_tree_tie_breaks_lowest_feature_then_threshold():
    # both columns split perfectly; the lower index must win
    X = np.array([[0.0, 0.0], [1.0, 1.0], [0.2, 0.2], [0.8, 0.8]])
    y = np.array([0, 1, 0, 1])
    model = fit(ModelSpec("decision_tree"), X, y)
    tree = model.estimator.tree
    assert tree.feature[0] == 0
    assert tree.threshold[0] == 0.5  # midpoint of 0.2 and 0.8


def test_gbdt_overfits_any_consistent_100_rows():
    rng = derive(20, "gbdt")
    X = uniform_matrix(rng, 100, 10)
    y = np.array([rng.randbelow(2) for _ in range(100)])  # arbitrary but consistent
    spec = ModelSpec(
        "gbdt",
        {"rounds": 300, "max_depth": 6, "learning_rate": 0.5, "bins": 128},
    )
    model = fit(spec, X, y)
    assert (model.predict(X) == y).mean() == 1.0


def test_random_forest_blobs_and_seed_determinism():
    rng = derive(21, "rf")
    X, y = blobs(rng, 60, 4, sep=2.0)
    tr, te = stratified_split(y, 0.25, seed=5)
    spec = ModelSpec("random_forest", {"n_estimators": 25, "max_depth": None}, seed=7)
    m1 = fit(spec, X[tr], y[tr])
    m2 = fit(spec, X[tr], y[tr])
    assert (m1.predict(X[te]) == y[te]).mean() >= 0.95
    assert np.array_equal(m1.predict_score(X[te]), m2.predict_score(X[te]))


@pytest.mark.parametrize("family", ["decision_tree", "random_forest", "gbdt"])
def test_standardize_toggle_does_not_change_tree_labels(family):
    rng = derive(22, f"std:{family}")
    X = uniform_matrix(rng, 80, 4, lo=0.0, hi=10.0)
    y = ((X[:, 0] > 5.0) ^ (X[:, 1] > 3.0)).astype(int)
    Xtest = uniform_matrix(rng, 40, 4, lo=0.0, hi=10.0)
    hyper = {
        "decision_tree": {"max_depth": 6},
        "random_forest": {"n_estimators": 15, "max_depth": 6},
        "gbdt": {"rounds": 40, "max_depth": 3, "bins": 256},
    }[family]
    plain = fit(ModelSpec(family, dict(hyper), seed=3, standardize=False), X, y)
    scaled = fit(ModelSpec(family, dict(hyper), seed=3, standardize=True), X, y)
    assert np.array_equal(plain.predict(X), scaled.predict(X))
    assert np.array_equal(plain.predict(Xtest), scaled.predict(Xtest))


def test_knn_always_standardizes():
    # one dominant-scale feature would swamp the vote without scaling
    X = np.array([[0.0, 1000.0], [1.0, 0.0], [0.9, 990.0], [0.1, 10.0]])
    y = np.array([0, 1, 0, 1])
    model = fit(ModelSpec("knn", {"k": 1}, standardize=False), X, y)
    assert model.scaler is not None
    assert np.array_equal(model.predict(X), y)


# ---------------------------------------------------------------- splitting


def test_split_100_plus_100_at_015():
    y = np.array([0] * 100 + [1] * 100)
    tr, te = stratified_split(y, 0.15, seed=0)
    assert len(tr) == 170 and len(te) == 30
    for cls in (0, 1):
        assert (y[tr] == cls).sum() == 85
        assert (y[te] == cls).sum() == 15


def test_split_7210_floor_rule():
    y = np.array([0] * 7210 + [1] * 7210)
    tr, te = stratified_split(y, 0.15, seed=0)
    for cls in (0, 1):
        assert (y[tr] == cls).sum() == 6128
        assert (y[te] == cls).sum() == 1082


def test_split_deterministic_and_disjoint():
    y = np.array([0, 1] * 30)
    tr1, te1 = stratified_split(y, 0.2, seed=9)
    tr2, te2 = stratified_split(y, 0.2, seed=9)
    assert np.array_equal(tr1, tr2) and np.array_equal(te1, te2)
    assert set(tr1) | set(te1) == set(range(60))
    assert not set(tr1) & set(te1)
    tr3, _ = stratified_split(y, 0.2, seed=10)
    assert not np.array_equal(tr1, tr3)


def test_split_tiny_class_fatal():
    y = np.array([0, 0, 0, 1])
    with pytest.raises(ValueError):
        stratified_split(y, 0.5, seed=0)


def test_kfold_100_rows_k5():
    y = np.array([0] * 50 + [1] * 50)
    folds = stratified_kfold(y, k=5, seed=0)
    assert len(folds) == 5
    seen = []
    for train, val in folds:
        assert val.size == 20
        assert (y[val] == 0).sum() == 10 and (y[val] == 1).sum() == 10
        assert not set(train) & set(val)
        assert len(set(train) | set(val)) == 100
        seen.extend(val.tolist())
    assert sorted(seen) == list(range(100))


def test_kfold_single_class_fold_fatal():
    y = np.array([0] * 45 + [1] * 5)
    with pytest.raises(ValueError, match="single-class"):
        stratified_kfold(y, k=10, seed=0)


# ---------------------------------------------------------------- CV


def test_cv_singleton_grid_returns_it():
    rng = derive(23, "cv1")
    X, y = blobs(rng, 25, 2)
    spec = ModelSpec("gaussian_nb")
    best, scores = cross_validate([spec], X, y, lambda s, a, b: fit(s, a, b), k=5, seed=0)
    assert best == spec
    assert len(scores[0]) == 5


def test_cv_picks_strictly_better_spec():
    rng = derive(24, "cv2")
    X = uniform_matrix(rng, 120, 2, lo=0.0, hi=1.0)
    y = ((X[:, 0] > 0.5) ^ (X[:, 1] > 0.5)).astype(int)  # stump-proof labels
    stump = ModelSpec("decision_tree", {"max_depth": 1})
    deep = ModelSpec("decision_tree", {"max_depth": None})
    best, scores = cross_validate(
        [stump, deep], X, y, lambda s, a, b: fit(s, a, b), k=5, seed=1
    )
    assert best == deep
    assert np.mean(scores[1]) > np.mean(scores[0])


def test_cv_tie_prefers_simpler_spec():
    rng = derive(25, "cv3")
    X, y = blobs(rng, 40, 2, sep=5.0)  # everything scores F1=1 here
    loose = ModelSpec("logistic_regression", {"l2": 1.0})
    tight = ModelSpec("logistic_regression", {"l2": 0.01})
    best, scores = cross_validate(
        [tight, loose], X, y, lambda s, a, b: fit(s, a, b), k=4, seed=2
    )
    assert np.mean(scores[0]) == np.mean(scores[1]) == 1.0
    assert complexity_key(loose) < complexity_key(tight)
    assert best == loose


def test_tune_and_fit_records_fold_scores():
    rng = derive(26, "tune")
    X, y = blobs(rng, 30, 2)
    model = tune_and_fit("knn", X, y, seed=0, k=3, grid=[{"k": 1}, {"k": 3}])
    assert len(model.fold_scores) == 3
    assert model.spec.family == "knn"


# ---------------------------------------------------------------- metrics


def test_metrics_worked_example():
    pred = np.array([1] * 10 + [0] * 10)
    truth = np.array([1] * 8 + [0] * 2 + [1] * 2 + [0] * 8)
    m = evaluate(pred, truth)
    assert (m.tp, m.fp, m.fn, m.tn) == (8, 2, 2, 8)
    assert m.precision == 0.8 and m.recall == 0.8 and m.f1 == pytest.approx(0.8)


def test_metrics_all_correct():
    m = evaluate(np.array([0, 1, 1]), np.array([0, 1, 1]))
    assert m.precision == m.recall == m.f1 == 1.0


def test_metrics_zero_division_rule():
    m = evaluate(np.array([0, 0, 0]), np.array([1, 1, 0]))
    assert m.precision == 0.0 and m.f1 == 0.0


def test_metrics_empty_fatal():
    with pytest.raises(ValueError):
        evaluate(np.array([]), np.array([]))


def test_f1_harmonic_identity_random_counts():
    rng = derive(27, "f1")
    for _ in range(200):
        n = 2 + rng.randbelow(50)
        pred = np.array([rng.randbelow(2) for _ in range(n)])
        truth = np.array([rng.randbelow(2) for _ in range(n)])
        m = evaluate(pred, truth)
        p_plus_r = m.precision + m.recall
        expect = 2 * m.precision * m.recall / p_plus_r if p_plus_r > 0 else 0.0
        assert m.f1 == pytest.approx(expect, abs=1e-12)


# ---------------------------------------------------------------- artifacts


SMALL_HYPERS = {
    "logistic_regression": {"l2": 1.0},
    "ridge": {"l2": 1.0},
    "lda": {},
    "gaussian_nb": {},
    "knn": {"k": 3},
    "decision_tree": {"max_depth": 4},
    "random_forest": {"n_estimators": 5, "max_depth": 4},
    "gbdt": {"rounds": 5, "max_depth": 3},
}


@pytest.mark.parametrize("family", FAMILIES)
def test_artifact_roundtrip_and_refit_byte_identical(family, tmp_path):
    rng = derive(28, f"art:{family}")
    X, y = blobs(rng, 25, 3)
    spec = ModelSpec(family, dict(SMALL_HYPERS[family]), seed=4)
    model = fit(spec, X, y, schema_hash="abc123")
    p1 = tmp_path / "m1.json"
    p2 = tmp_path / "m2.json"
    save_model(model, p1)
    loaded = load_model(p1)
    assert np.array_equal(loaded.predict_score(X), model.predict_score(X))
    assert loaded.spec == model.spec
    # refitting from scratch with the same seed writes identical bytes
    save_model(fit(spec, X, y, schema_hash="abc123"), p2)
    assert p1.read_bytes() == p2.read_bytes()


def test_artifact_has_no_wall_time(tmp_path):
    rng = derive(29, "art2")
    X, y = blobs(rng, 20, 2)
    model = fit(ModelSpec("ridge"), X, y)
    path = tmp_path / "m.json"
    save_model(model, path)
    doc = json.loads(path.read_text())
    assert "time" not in json.dumps(doc).lower()


def test_schema_hash_mismatch_fatal():
    rng = derive(30, "hash")
    X, y = blobs(rng, 20, 2)
    model = fit(ModelSpec("gaussian_nb"), X, y, schema_hash="aaa111")
    with pytest.raises(ValueError, match="schema"):
        model.predict(X, schema_hash="bbb222")
    assert model.predict(X, schema_hash="aaa111").shape == (40,)


def test_nonfinite_column_named_in_error():
    X = np.ones((10, 3))
    X[4, 2] = np.nan
    y = np.array([0, 1] * 5)
    with pytest.raises(ValueError, match="third"):
        fit(ModelSpec("ridge"), X, y, columns=["first", "second", "third"])


def test_spec_rejects_unknown_hyperparameter():
    with pytest.raises(ValueError, match="unknown hyper"):
        ModelSpec("knn", {"neighbours": 5})
    with pytest.raises(ValueError, match="unknown model family"):
        ModelSpec("svm")


def test_default_grids_cover_all_families():
    assert set(DEFAULT_GRIDS) == set(FAMILIES)
    for family, grid in DEFAULT_GRIDS.items():
        assert grid, family
        for hyper in grid:
            ModelSpec(family, dict(hyper))  # validates keys and ranges


# ------------------------------------------------------- score conventions


@pytest.mark.parametrize(
    "family", ["logistic_regression", "gaussian_nb", "knn", "decision_tree", "random_forest", "gbdt"]
)
def test_probability_families_threshold_at_half(family):
    rng = derive(31, f"thr:{family}")
    X, y = blobs(rng, 30, 2, sep=1.0)
    model = fit(ModelSpec(family, dict(SMALL_HYPERS[family]), seed=1), X, y)
    scores = model.predict_score(X)
    assert np.all((scores >= 0.0) & (scores <= 1.0))
    assert np.array_equal(model.predict(X), (scores >= 0.5).astype(int))


def test_deterministic_metrics_across_runs():
    rng = derive(32, "det")
    X, y = blobs(rng, 50, 3, sep=1.0)
    tr, te = stratified_split(y, 0.2, seed=6)
    runs = []
    for _ in range(2):
        model = fit(ModelSpec("gbdt", {"rounds": 20, "max_depth": 3}, seed=6), X[tr], y[tr])
        m = evaluate(model.predict(X[te]), y[te])
        runs.append((m.precision, m.recall, m.f1))
    assert runs[0] == runs[1]
