"""CSV and SVG outputs for the attribution results.

All floats are written with repr so regenerating from the same inputs is
byte-identical.
"""

from pathlib import Path

import numpy as np

from .report import ImportanceReport


def _fmt(x) -> str:
    return repr(float(x))


def write_importance_csv(report: ImportanceReport, path) -> None:
    lines = ["feature,score,rank"]
    for rank, name in enumerate(report.ranking, start=1):
        lines.append(f"{name},{_fmt(report.attributions[name])},{rank}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def write_shap_summary_csv(report: ImportanceReport, X, path) -> None:
    """Per-sample (shap, feature value) pairs, enough to redraw a beeswarm."""
    if report.shap_matrix is None:
        raise ValueError("report has no per-sample attribution matrix")
    X = np.asarray(X, dtype=float)
    lines = ["feature,sample_id,shap,feature_value"]
    for j, name in enumerate(report.columns):
        for i in range(len(X)):
            lines.append(
                f"{name},{i},{_fmt(report.shap_matrix[i, j])},{_fmt(X[i, j])}"
            )
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def write_topk_csv(rows: list, path) -> None:
    lines = ["k,f1"]
    for k, f1 in rows:
        lines.append(f"{k},{_fmt(f1)}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def write_heatmap_csv(rows: list, path) -> None:
    lines = ["idiom,statistic,group,value"]
    for idiom, stat, group, value in rows:
        text = idiom.replace('"', '""')
        lines.append(f'"{text}",{stat},{group},{_fmt(value)}')
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def render_top20_svg(report: ImportanceReport, path=None) -> str:
    """Static horizontal bar chart of the 20 highest-scoring features."""
    top = report.ranking[:20]
    scores = [report.attributions[name] for name in top]
    peak = max((abs(s) for s in scores), default=1.0) or 1.0
    bar_h, gap, label_w, chart_w = 18, 6, 320, 420
    height = len(top) * (bar_h + gap) + 40
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{label_w + chart_w + 60}" '
        f'height="{height}" font-family="monospace" font-size="12">',
        f'<text x="{label_w}" y="16">{report.method}</text>',
    ]
    for i, (name, score) in enumerate(zip(top, scores)):
        y = 30 + i * (bar_h + gap)
        width = abs(score) / peak * chart_w
        parts.append(
            f'<text x="{label_w - 8}" y="{y + 13}" text-anchor="end">{name}</text>'
        )
        parts.append(
            f'<rect x="{label_w}" y="{y}" width="{width:.2f}" height="{bar_h}" '
            f'fill="#4878a8"/>'
        )
        parts.append(
            f'<text x="{label_w + width + 6:.2f}" y="{y + 13}">{score:.4f}</text>'
        )
    parts.append("</svg>")
    svg = "\n".join(parts) + "\n"
    if path is not None:
        Path(path).write_text(svg, encoding="utf-8")
    return svg
