"""Binary precision/recall/F1 from confusion counts. Positive class = 1."""

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class Metrics:
    precision: float
    recall: float
    f1: float
    tp: int
    fp: int
    tn: int
    fn: int


def evaluate(predictions, truths) -> Metrics:
    y_pred = np.asarray(predictions, dtype=int)
    y_true = np.asarray(truths, dtype=int)
    if y_pred.size == 0:
        raise ValueError("cannot evaluate empty predictions")
    if y_pred.shape != y_true.shape:
        raise ValueError("prediction/truth length mismatch")
    tp = int(np.sum((y_pred == 1) & (y_true == 1)))
    fp = int(np.sum((y_pred == 1) & (y_true == 0)))
    tn = int(np.sum((y_pred == 0) & (y_true == 0)))
    fn = int(np.sum((y_pred == 0) & (y_true == 1)))
    precision = tp / (tp + fp) if tp + fp else 0.0
    recall = tp / (tp + fn) if tp + fn else 0.0
    f1 = 2 * precision * recall / (precision + recall) if precision + recall else 0.0
    return Metrics(precision=precision, recall=recall, f1=f1, tp=tp, fp=fp, tn=tn, fn=fn)
