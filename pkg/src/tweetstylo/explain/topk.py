"""F1 as a function of how many top-ranked features the model keeps."""

import warnings

import numpy as np

from ..models import evaluate, fit


def topk_f1_curve(
    ranking: list,
    columns: list,
    X_train,
    y_train,
    X_test,
    y_test,
    ks,
    spec,
) -> list:
    """Retrain `spec` on the top-k columns for each k; rows of (k, F1).

    Selected columns keep their schema order, so k = len(columns)
    reproduces the all-features run bit for bit. k = 0 entries are
    skipped with a warning; k may not exceed the column count.
    """
    X_train = np.asarray(X_train, dtype=float)
    X_test = np.asarray(X_test, dtype=float)
    index_of = {name: i for i, name in enumerate(columns)}
    rows = []
    for k in ks:
        if k == 0:
            warnings.warn("skipping k=0 in top-k curve", stacklevel=2)
            continue
        if k > len(columns):
            raise ValueError(f"k={k} exceeds {len(columns)} columns")
        chosen = sorted(index_of[name] for name in ranking[:k])
        model = fit(spec, X_train[:, chosen], y_train)
        f1 = evaluate(model.predict(X_test[:, chosen]), y_test).f1
        rows.append((int(k), float(f1)))
    return rows
