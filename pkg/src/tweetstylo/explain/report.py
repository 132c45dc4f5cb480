"""Importance report container shared by both attribution methods."""

from dataclasses import dataclass, field

import numpy as np

METHODS = ("tree_shap_mean_abs", "permutation_f1_drop")


@dataclass
class ImportanceReport:
    method: str
    columns: list
    attributions: dict                  # column name -> score
    ranking: list = field(default_factory=list)
    shap_matrix: np.ndarray = None      # (rows, columns), tree_shap only
    base_value: float = None            # tree_shap only

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError(f"unknown importance method {self.method!r}")
        if not self.ranking:
            self.ranking = rank_columns(self.columns, self.attributions)

    def top(self, k: int) -> list:
        return self.ranking[:k]


def rank_columns(columns: list, attributions: dict) -> list:
    """Columns by descending score; equal scores keep schema order."""
    order = {name: i for i, name in enumerate(columns)}
    return sorted(columns, key=lambda c: (-attributions[c], order[c]))
