"""Run configuration: one JSON file drives every stage.

The accepted schema (all keys optional except inputs):

    {
      "inputs":        {"conspiracy": "path.jsonl", "control": "path.jsonl"},
      "out":           "run",
      "seed":          0,
      "min_tweets":    10,
      "cap":           100,
      "backend":       {"kind": "builtin"|"remote", "endpoint": "",
                        "batch_size": 52, "timeout": 30.0},
      "strict":        false,      # score stage: cache-only, no backend calls
      "max_failure_rate": 0.01,    # score stage aborts above this
      "test_fraction": 0.15,
      "cv_k":          5,
      "families":      [... any of the 8 family names ...],
      "explain":       {"method": "shap"|"permutation", "family": "gbdt",
                        "repeats": 10, "topk": [1, 5, ...]},
      "jobs":          1
    }

Unknown keys anywhere are an error, so typos fail loudly.
"""

import json
from dataclasses import dataclass, field
from pathlib import Path

from ..models.base import FAMILIES

DEFAULT_FAMILIES = list(FAMILIES)
DEFAULT_TOPK = [1, 5, 10, 20, 50, 100, 200, 400, 868]

_TOP_KEYS = {
    "inputs", "out", "seed", "min_tweets", "cap", "backend", "strict",
    "max_failure_rate", "test_fraction", "cv_k", "families", "explain", "jobs",
}
_BACKEND_KEYS = {"kind", "endpoint", "batch_size", "timeout"}
_EXPLAIN_KEYS = {"method", "family", "repeats", "topk"}


@dataclass
class RunConfig:
    inputs: dict = field(default_factory=dict)
    out: str = "run"
    seed: int = 0
    min_tweets: int = 10
    cap: int = 100
    backend: dict = field(
        default_factory=lambda: {
            "kind": "builtin", "endpoint": "", "batch_size": 52, "timeout": 30.0,
        }
    )
    strict: bool = False
    max_failure_rate: float = 0.01
    test_fraction: float = 0.15
    cv_k: int = 5
    families: list = field(default_factory=lambda: list(DEFAULT_FAMILIES))
    explain: dict = field(
        default_factory=lambda: {
            "method": "shap", "family": "gbdt", "repeats": 10,
            "topk": list(DEFAULT_TOPK),
        }
    )
    jobs: int = 1

    def __post_init__(self):
        for label in self.inputs:
            if label not in ("conspiracy", "control"):
                raise ValueError(f"inputs key must be conspiracy or control, got {label!r}")
        unknown = set(self.backend) - _BACKEND_KEYS
        if unknown:
            raise ValueError(f"unknown backend keys: {sorted(unknown)}")
        unknown = set(self.explain) - _EXPLAIN_KEYS
        if unknown:
            raise ValueError(f"unknown explain keys: {sorted(unknown)}")
        for fam in self.families:
            if fam not in FAMILIES:
                raise ValueError(f"unknown model family {fam!r}")
        if self.explain.get("method", "shap") not in ("shap", "permutation"):
            raise ValueError("explain.method must be shap or permutation")
        if not 0.0 < self.test_fraction < 1.0:
            raise ValueError("test_fraction must be in (0, 1)")

    @property
    def out_dir(self) -> Path:
        return Path(self.out)

    def resolved(self) -> dict:
        return {
            "inputs": {k: str(v) for k, v in sorted(self.inputs.items())},
            "out": str(self.out),
            "seed": self.seed,
            "min_tweets": self.min_tweets,
            "cap": self.cap,
            "backend": {k: self.backend[k] for k in sorted(self.backend)},
            "strict": self.strict,
            "max_failure_rate": self.max_failure_rate,
            "test_fraction": self.test_fraction,
            "cv_k": self.cv_k,
            "families": list(self.families),
            "explain": {k: self.explain[k] for k in sorted(self.explain)},
            "jobs": self.jobs,
        }

    def projection(self, keys: tuple) -> dict:
        full = self.resolved()
        return {k: full[k] for k in keys}


def load_config(path=None, **overrides) -> RunConfig:
    """Config file plus CLI overrides; overrides with value None are ignored."""
    doc = {}
    if path is not None:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
        if not isinstance(doc, dict):
            raise ValueError(f"{path}: config must be a JSON object")
        if set(doc) == {"config", "schema_hash"}:
            # a resolved config written by write_resolved is also accepted
            doc = doc["config"]
        unknown = set(doc) - _TOP_KEYS
        if unknown:
            raise ValueError(f"{path}: unknown config keys: {sorted(unknown)}")
    for key, value in overrides.items():
        if value is None:
            continue
        if key in ("backend_kind", "endpoint"):
            doc.setdefault("backend", dict(RunConfig().backend))
            doc["backend"]["kind" if key == "backend_kind" else "endpoint"] = value
        elif key in ("explain_method",):
            doc.setdefault("explain", dict(RunConfig().explain))
            doc["explain"]["method"] = value
        elif key == "family":
            doc["families"] = [value]
        else:
            doc[key] = value
    return RunConfig(**doc)


def write_resolved(cfg: RunConfig) -> Path:
    """Embed the exact resolved config (and schema hash) in the run dir."""
    from ..schema import schema_hash

    cfg.out_dir.mkdir(parents=True, exist_ok=True)
    path = cfg.out_dir / "config.json"
    doc = {"config": cfg.resolved(), "schema_hash": schema_hash()}
    path.write_text(
        json.dumps(doc, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )
    return path
