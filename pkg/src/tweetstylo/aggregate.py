"""Per-user aggregation: 7 descriptive statistics over per-tweet features.

Standard deviation is the sample (n-1) kind, defined as 0 for a single
observation. Quartiles use linear interpolation on the order statistics
at position (n-1)*p.
"""

import numpy as np

from .schema import N_BASE, STATS, schema_hash, user_columns


def describe_series(values) -> tuple:
    """(mean, median, std, min, max, q1, q3) of a non-empty finite series."""
    arr = np.asarray(values, dtype=float)
    if arr.size == 0:
        raise ValueError("describe_series requires at least one value")
    if not np.all(np.isfinite(arr)):
        raise ValueError("describe_series requires finite values")
    # sort first so every statistic sees one canonical order and the
    # result is bit-identical under permutation of the input
    arr = np.sort(arr)
    std = float(np.std(arr, ddof=1)) if arr.size > 1 else 0.0
    q1, med, q3 = np.quantile(arr, [0.25, 0.5, 0.75])
    lo = float(arr[0])
    hi = float(arr[-1])
    # the exact mean lies in [min, max]; clamp away summation rounding
    mean = min(max(float(np.mean(arr)), lo), hi)
    return (mean, float(med), std, lo, hi, float(q1), float(q3))


def aggregate_user(tweet_vectors) -> np.ndarray:
    """Collapse an (n_tweets, 124) block into one 868-value row.

    Feature-major layout: columns f*7 .. f*7+6 hold the 7 statistics of
    base feature f, in STATS order.
    """
    block = np.asarray(tweet_vectors, dtype=float)
    if block.ndim != 2 or block.shape[1] != N_BASE:
        raise ValueError(f"expected (n, {N_BASE}) block, got {block.shape}")
    if block.shape[0] < 1:
        raise ValueError("user has no tweet vectors")
    n = block.shape[0]
    # per-column sort: statistics become exactly tweet-order invariant
    block = np.sort(block, axis=0)
    q1, med, q3 = np.quantile(block, [0.25, 0.5, 0.75], axis=0)
    std = block.std(axis=0, ddof=1) if n > 1 else np.zeros(N_BASE)
    lo = block[0]
    hi = block[-1]
    mean = np.clip(block.mean(axis=0), lo, hi)
    row = np.empty(N_BASE * len(STATS))
    for f in range(N_BASE):
        row[f * 7 : f * 7 + 7] = (
            mean[f],
            med[f],
            std[f],
            lo[f],
            hi[f],
            q1[f],
            q3[f],
        )
    return row


def build_user_matrix(per_user: dict) -> tuple:
    """per_user maps user_id -> (label, list of 124-vectors).

    Returns (user_ids, labels, matrix) with users sorted by user_id.
    """
    user_ids = sorted(per_user)
    labels = []
    rows = []
    for uid in user_ids:
        label, vectors = per_user[uid]
        if len(vectors) == 0:
            raise ValueError(f"user {uid} has no scored tweets")
        labels.append(label)
        rows.append(aggregate_user(vectors))
    matrix = np.vstack(rows) if rows else np.empty((0, N_BASE * len(STATS)))
    return user_ids, labels, matrix


def write_matrix_csv(path, user_ids, labels, matrix, lex=None) -> None:
    columns = user_columns(lex)
    with open(path, "w", encoding="utf-8") as f:
        f.write(f"# schema_hash={schema_hash(lex)}\n")
        f.write("user_id,label," + ",".join(columns) + "\n")
        for uid, label, row in zip(user_ids, labels, matrix):
            f.write(uid + "," + label + "," + ",".join(repr(float(x)) for x in row) + "\n")


def read_matrix_csv(path, lex=None) -> tuple:
    """Returns (user_ids, labels, matrix); validates the embedded schema hash."""
    with open(path, encoding="utf-8") as f:
        first = f.readline().strip()
        if not first.startswith("# schema_hash="):
            raise ValueError(f"{path}: missing schema hash header")
        found = first.split("=", 1)[1]
        expected = schema_hash(lex)
        if found != expected:
            raise ValueError(
                f"{path}: schema hash {found[:12]}.. does not match current {expected[:12]}.."
            )
        header = f.readline().strip().split(",")
        if header[:2] != ["user_id", "label"] or header[2:] != user_columns(lex):
            raise ValueError(f"{path}: column header does not match schema")
        user_ids, labels, rows = [], [], []
        for line in f:
            line = line.strip()
            if not line:
                continue
            parts = line.split(",")
            user_ids.append(parts[0])
            labels.append(parts[1])
            rows.append([float(x) for x in parts[2:]])
    matrix = np.array(rows) if rows else np.empty((0, len(user_columns(lex))))
    return user_ids, labels, matrix
