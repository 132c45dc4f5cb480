"""The nine pipeline stages over one run directory.

Each stage reads files written by earlier stages, writes its own under
`<out>/<stage>/`, and records a content-hash manifest. Reruns with
unchanged inputs and config are no-ops.
"""

import json
import time
from pathlib import Path

import numpy as np

from ..aggregate import build_user_matrix, read_matrix_csv, write_matrix_csv
from ..corpus import (
    CONSPIRACY,
    balance_dataset,
    load_tweets,
    preprocess_all,
    read_timelines,
    write_timelines,
)
from ..explain import (
    idiom_heatmap_stats,
    permutation_importance,
    render_top20_svg,
    topk_f1_curve,
    tree_shap_report,
    write_heatmap_csv,
    write_importance_csv,
    write_shap_summary_csv,
    write_topk_csv,
)
from ..lingfeat import extract_linguistic
from ..models import evaluate as compute_metrics
from ..models import load_model, save_model, stratified_split, tune_and_fit
from ..models.base import TREE_FAMILIES
from ..schema import schema_hash, user_columns
from ..textnlp import annotate
from ..textnlp.lexicons import load_lexicons
from ..zeroshot import ScoreCache, ScoringStats, make_backend, score_tweet
from .config import RunConfig
from .manifest import up_to_date, write_manifest

STAGES = (
    "ingest", "preprocess", "score", "featurize", "aggregate",
    "train", "evaluate", "explain", "report",
)


class StageError(RuntimeError):
    pass


def _jsonl_read(path):
    with open(path, encoding="utf-8") as f:
        for line in f:
            line = line.strip()
            if line:
                yield json.loads(line)


def _jsonl_write(path, rows):
    with open(path, "w", encoding="utf-8") as f:
        for row in rows:
            f.write(json.dumps(row, sort_keys=True))
            f.write("\n")


# ------------------------------------------------------------ stage I/O

def _io_ingest(cfg):
    if set(cfg.inputs) != {"conspiracy", "control"}:
        raise StageError(
            "config must name both input files (inputs.conspiracy, inputs.control)"
        )
    inputs = [Path(cfg.inputs[label]) for label in ("conspiracy", "control")]
    outputs = [cfg.out_dir / "ingest" / f"{label}.jsonl" for label in ("conspiracy", "control")]
    return inputs, outputs


def _io_preprocess(cfg):
    out = cfg.out_dir
    return (
        [out / "ingest" / "conspiracy.jsonl", out / "ingest" / "control.jsonl"],
        [out / "preprocess" / "timelines.jsonl", out / "preprocess" / "summary.txt"],
    )


def _io_score(cfg):
    out = cfg.out_dir
    return (
        [out / "preprocess" / "timelines.jsonl"],
        [out / "score" / "scores.jsonl", out / "score" / "stats.json"],
    )


def _io_featurize(cfg):
    out = cfg.out_dir
    return (
        [out / "preprocess" / "timelines.jsonl", out / "score" / "scores.jsonl"],
        [out / "featurize" / "features.jsonl"],
    )


def _io_aggregate(cfg):
    out = cfg.out_dir
    return (
        [out / "featurize" / "features.jsonl"],
        [out / "aggregate" / "users.csv"],
    )


def _io_train(cfg):
    out = cfg.out_dir
    outputs = [out / "train" / "split.json"]
    outputs += [out / "train" / f"model_{fam}.json" for fam in cfg.families]
    return [out / "aggregate" / "users.csv"], outputs


def _io_evaluate(cfg):
    out = cfg.out_dir
    inputs = [out / "aggregate" / "users.csv", out / "train" / "split.json"]
    inputs += [out / "train" / f"model_{fam}.json" for fam in cfg.families]
    return inputs, [out / "evaluate" / "metrics.csv"]


def _io_explain(cfg):
    out = cfg.out_dir
    family = cfg.explain.get("family", "gbdt")
    inputs = [
        out / "aggregate" / "users.csv",
        out / "train" / "split.json",
        out / "train" / f"model_{family}.json",
    ]
    outputs = [
        out / "explain" / "importance.csv",
        out / "explain" / "topk_f1.csv",
        out / "explain" / "idiom_heatmap.csv",
        out / "explain" / "top20.svg",
    ]
    if cfg.explain.get("method", "shap") == "shap":
        outputs.insert(1, out / "explain" / "shap_summary.csv")
    return inputs, outputs


def _io_report(cfg):
    out = cfg.out_dir
    return (
        [out / "evaluate" / "metrics.csv", out / "explain" / "importance.csv"],
        [out / "report" / "report.txt"],
    )


# --------------------------------------------------------- stage bodies

def _run_ingest(cfg):
    out = cfg.out_dir / "ingest"
    out.mkdir(parents=True, exist_ok=True)
    for label in ("conspiracy", "control"):
        timelines = load_tweets(cfg.inputs[label], label)
        write_timelines(out / f"{label}.jsonl", timelines)


def _run_preprocess(cfg):
    out = cfg.out_dir / "preprocess"
    out.mkdir(parents=True, exist_ok=True)
    timelines = []
    for label in ("conspiracy", "control"):
        timelines.extend(read_timelines(cfg.out_dir / "ingest" / f"{label}.jsonl"))
    kept, summary = preprocess_all(timelines, cfg.min_tweets, cfg.cap)
    balanced = balance_dataset(kept, cfg.seed)
    write_timelines(out / "timelines.jsonl", balanced)
    per_class = sum(1 for t in balanced if t.label == CONSPIRACY)
    text = summary.render() + f"  balanced to {per_class} users per class\n"
    (out / "summary.txt").write_text(text, encoding="utf-8")


def _run_score(cfg):
    out = cfg.out_dir / "score"
    out.mkdir(parents=True, exist_ok=True)
    lex = load_lexicons()
    backend = make_backend(
        cfg.backend.get("kind", "builtin"),
        cfg.backend.get("endpoint", ""),
        batch_size=cfg.backend.get("batch_size", 52),
        timeout=cfg.backend.get("timeout", 30.0),
        lex=lex,
    )
    backend.health_check()
    stats = ScoringStats()
    rows = []
    with ScoreCache(out / "cache.tsv") as cache:
        for timeline in read_timelines(cfg.out_dir / "preprocess" / "timelines.jsonl"):
            for tweet in timeline.tweets:
                vec = score_tweet(
                    tweet.text, backend, cache, lex, stats, strict=cfg.strict
                )
                rows.append({
                    "user_id": timeline.user_id,
                    "tweet_id": tweet.tweet_id,
                    "scores": vec.combined(),
                })
    rate = stats.failure_rate
    if rate > cfg.max_failure_rate:
        raise StageError(
            f"scoring failed for {rate:.1%} of hypotheses "
            f"(limit {cfg.max_failure_rate:.1%}); stage aborted, cache kept"
        )
    _jsonl_write(out / "scores.jsonl", rows)
    (out / "stats.json").write_text(
        json.dumps(
            {"scored": stats.scored, "from_cache": stats.from_cache, "failed": stats.failed},
            sort_keys=True,
        ) + "\n",
        encoding="utf-8",
    )


def _run_featurize(cfg):
    out = cfg.out_dir / "featurize"
    out.mkdir(parents=True, exist_ok=True)
    scores = {
        (r["user_id"], r["tweet_id"]): r["scores"]
        for r in _jsonl_read(cfg.out_dir / "score" / "scores.jsonl")
    }
    lex = load_lexicons()
    rows = []
    for timeline in read_timelines(cfg.out_dir / "preprocess" / "timelines.jsonl"):
        for tweet in timeline.tweets:
            agreement = scores.get((timeline.user_id, tweet.tweet_id))
            if agreement is None:
                raise StageError(
                    f"tweet {tweet.tweet_id} has no scores; rerun the score stage"
                )
            linguistic = extract_linguistic(annotate(tweet.text, lex), lex)
            rows.append({
                "user_id": timeline.user_id,
                "label": timeline.label,
                "tweet_id": tweet.tweet_id,
                "values": list(agreement) + linguistic,
            })
    _jsonl_write(out / "features.jsonl", rows)


def _run_aggregate(cfg):
    out = cfg.out_dir / "aggregate"
    out.mkdir(parents=True, exist_ok=True)
    per_user = {}
    for row in _jsonl_read(cfg.out_dir / "featurize" / "features.jsonl"):
        entry = per_user.setdefault(row["user_id"], (row["label"], []))
        entry[1].append(row["values"])
    user_ids, labels, matrix = build_user_matrix(per_user)
    write_matrix_csv(out / "users.csv", user_ids, labels, matrix)


def _load_matrix(cfg):
    user_ids, labels, matrix = read_matrix_csv(cfg.out_dir / "aggregate" / "users.csv")
    y = np.array([1 if label == CONSPIRACY else 0 for label in labels])
    return user_ids, y, matrix


def _run_train(cfg):
    out = cfg.out_dir / "train"
    out.mkdir(parents=True, exist_ok=True)
    user_ids, y, X = _load_matrix(cfg)
    sh = schema_hash()
    train_idx, test_idx = stratified_split(y, cfg.test_fraction, cfg.seed)
    (out / "split.json").write_text(
        json.dumps(
            {
                "train": [user_ids[i] for i in train_idx],
                "test": [user_ids[i] for i in test_idx],
            },
            sort_keys=True,
        ) + "\n",
        encoding="utf-8",
    )
    for family in cfg.families:
        model = tune_and_fit(
            family, X[train_idx], y[train_idx],
            schema_hash=sh, seed=cfg.seed, k=cfg.cv_k,
        )
        save_model(model, out / f"model_{family}.json")


def _read_split(cfg, user_ids):
    doc = json.loads((cfg.out_dir / "train" / "split.json").read_text(encoding="utf-8"))
    index = {uid: i for i, uid in enumerate(user_ids)}
    train_idx = np.array([index[u] for u in doc["train"]])
    test_idx = np.array([index[u] for u in doc["test"]])
    return train_idx, test_idx


def _run_evaluate(cfg):
    out = cfg.out_dir / "evaluate"
    out.mkdir(parents=True, exist_ok=True)
    user_ids, y, X = _load_matrix(cfg)
    sh = schema_hash()
    _, test_idx = _read_split(cfg, user_ids)
    lines = ["family,precision,recall,f1,tp,fp,tn,fn"]
    for family in cfg.families:
        model = load_model(cfg.out_dir / "train" / f"model_{family}.json")
        m = compute_metrics(model.predict(X[test_idx], schema_hash=sh), y[test_idx])
        lines.append(
            f"{family},{m.precision!r},{m.recall!r},{m.f1!r},{m.tp},{m.fp},{m.tn},{m.fn}"
        )
    (out / "metrics.csv").write_text("\n".join(lines) + "\n", encoding="utf-8")


def _run_explain(cfg):
    out = cfg.out_dir / "explain"
    out.mkdir(parents=True, exist_ok=True)
    family = cfg.explain.get("family", "gbdt")
    method = cfg.explain.get("method", "shap")
    user_ids, y, X = _load_matrix(cfg)
    train_idx, test_idx = _read_split(cfg, user_ids)
    model = load_model(cfg.out_dir / "train" / f"model_{family}.json")
    columns = user_columns()
    if method == "shap":
        if family not in TREE_FAMILIES:
            raise StageError(
                f"shap explains only tree families ({', '.join(sorted(TREE_FAMILIES))}); "
                f"use --method permutation for {family}"
            )
        report = tree_shap_report(model, X[test_idx], columns)
        write_shap_summary_csv(report, X[test_idx], out / "shap_summary.csv")
    else:
        report = permutation_importance(
            model, X[test_idx], y[test_idx], columns,
            repeats=cfg.explain.get("repeats", 10), seed=cfg.seed,
        )
    write_importance_csv(report, out / "importance.csv")
    render_top20_svg(report, out / "top20.svg")
    ks = [k for k in cfg.explain.get("topk", []) if k <= len(columns)]
    if len(columns) not in ks:
        ks.append(len(columns))
    curve = topk_f1_curve(
        report.ranking, columns,
        X[train_idx], y[train_idx], X[test_idx], y[test_idx],
        ks, model.spec,
    )
    write_topk_csv(curve, out / "topk_f1.csv")
    write_heatmap_csv(idiom_heatmap_stats(X, y, columns), out / "idiom_heatmap.csv")


def _run_report(cfg):
    out = cfg.out_dir / "report"
    out.mkdir(parents=True, exist_ok=True)
    metric_lines = (cfg.out_dir / "evaluate" / "metrics.csv").read_text(
        encoding="utf-8"
    ).strip().splitlines()
    rows = [line.split(",") for line in metric_lines[1:]]
    lines = ["classification results", "=" * 51]
    lines.append(f"{'family':<22}{'precision':>10}{'recall':>9}{'f1':>10}")
    for r in rows:
        lines.append(f"{r[0]:<22}{float(r[1]):>10.4f}{float(r[2]):>9.4f}{float(r[3]):>10.4f}")
    imp_lines = (cfg.out_dir / "explain" / "importance.csv").read_text(
        encoding="utf-8"
    ).strip().splitlines()
    lines.append("")
    lines.append("top 20 features")
    lines.append("=" * 51)
    for line in imp_lines[1:21]:
        feature, score, rank = line.rsplit(",", 2)
        lines.append(f"{int(rank):>3}. {feature:<34}{float(score):>12.6f}")
    lines.append("")
    lines.append("artifacts")
    lines.append("=" * 51)
    for path in sorted(cfg.out_dir.rglob("*")):
        if path.suffix in (".csv", ".svg") and path.is_file():
            lines.append(str(path.relative_to(cfg.out_dir)))
    (out / "report.txt").write_text("\n".join(lines) + "\n", encoding="utf-8")


_STAGE_DEFS = {
    "ingest": (("inputs",), _io_ingest, _run_ingest),
    "preprocess": (("seed", "min_tweets", "cap"), _io_preprocess, _run_preprocess),
    "score": (("backend", "strict", "max_failure_rate"), _io_score, _run_score),
    "featurize": ((), _io_featurize, _run_featurize),
    "aggregate": ((), _io_aggregate, _run_aggregate),
    "train": (("seed", "families", "test_fraction", "cv_k"), _io_train, _run_train),
    "evaluate": (("families",), _io_evaluate, _run_evaluate),
    "explain": (("seed", "explain"), _io_explain, _run_explain),
    "report": ((), _io_report, _run_report),
}

_PRODUCER = {stage: stage for stage in STAGES}


def _check_inputs(cfg, inputs):
    for path in inputs:
        if path.exists():
            continue
        try:
            rel = path.relative_to(cfg.out_dir)
            producer = _PRODUCER.get(rel.parts[0])
        except ValueError:
            producer = None
        if producer:
            raise StageError(
                f"missing {path}; run the `{producer}` stage first"
            )
        raise StageError(f"input file not found: {path}")


def run_stage(stage: str, cfg: RunConfig, force: bool = False) -> bool:
    """Run one stage; returns False when it was already up to date."""
    if stage not in _STAGE_DEFS:
        raise ValueError(f"unknown stage {stage!r}")
    config_keys, io_fn, run_fn = _STAGE_DEFS[stage]
    inputs, outputs = io_fn(cfg)
    _check_inputs(cfg, inputs)
    config_slice = cfg.projection(config_keys)
    if not force and up_to_date(cfg.out_dir, stage, config_slice, inputs):
        return False
    start = time.perf_counter()
    run_fn(cfg)
    notes = None
    if stage == "train":
        notes = {"wall_seconds": round(time.perf_counter() - start, 3)}
    write_manifest(cfg.out_dir, stage, config_slice, inputs, outputs, notes=notes)
    return True
