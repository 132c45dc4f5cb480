"""Feature attribution: exact SHAP for trees, permutation for anything,
the top-k retraining curve, and idiom group statistics."""

import numpy as np

from .export import (
    render_top20_svg,
    write_heatmap_csv,
    write_importance_csv,
    write_shap_summary_csv,
    write_topk_csv,
)
from .heatmap import idiom_heatmap_stats
from .permutation import permutation_importance
from .report import ImportanceReport, rank_columns
from .topk import topk_f1_curve
from .treeshap import ensemble_margin, tree_shap

__all__ = [
    "ImportanceReport",
    "ensemble_margin",
    "idiom_heatmap_stats",
    "permutation_importance",
    "rank_columns",
    "render_top20_svg",
    "tree_shap",
    "tree_shap_report",
    "topk_f1_curve",
    "write_heatmap_csv",
    "write_importance_csv",
    "write_shap_summary_csv",
    "write_topk_csv",
]


def tree_shap_report(model, X, columns: list) -> ImportanceReport:
    """Mean-|SHAP| importance with the per-sample matrix attached."""
    phi, base = tree_shap(model, X)
    scores = np.abs(phi).mean(axis=0)
    return ImportanceReport(
        method="tree_shap_mean_abs",
        columns=list(columns),
        attributions={name: float(s) for name, s in zip(columns, scores)},
        shap_matrix=phi,
        base_value=float(base),
    )
