"""Per-group descriptive statistics for the idiom agreement columns."""

import numpy as np

from ..schema import STATS, idiom_feature_names, idiom_text_of

GROUP_NAMES = {0: "control", 1: "conspiracy"}


def idiom_heatmap_stats(X, y, columns: list) -> list:
    """Average each idiom stat column within each label group.

    Rows of (idiom text, statistic, group, value): 44 idioms x 7 stats
    x 2 groups = 616 cells. Missing idiom columns are a schema error.
    """
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=int)
    index_of = {name: i for i, name in enumerate(columns)}
    missing = [
        f"{stat}({feat})"
        for feat in idiom_feature_names()
        for stat in STATS
        if f"{stat}({feat})" not in index_of
    ]
    if missing:
        raise ValueError(
            f"matrix lacks {len(missing)} idiom columns, e.g. {missing[0]!r}"
        )
    rows = []
    texts = idiom_text_of()
    for feat in idiom_feature_names():
        text = texts[feat]
        for stat in STATS:
            col = X[:, index_of[f"{stat}({feat})"]]
            for label in (0, 1):
                value = float(col[y == label].mean())
                rows.append((text, stat, GROUP_NAMES[label], value))
    return rows
