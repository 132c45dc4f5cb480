"""Content-hash manifests that make stages resumable and idempotent.

A stage manifest records the sha256 of every input and output file plus
the slice of config the stage depends on. A rerun whose manifest still
matches reality is a no-op. Manifests carry no timestamps; the only
machine-dependent field is the train manifest's wall-seconds note.
"""

import hashlib
import json
from pathlib import Path


def file_sha256(path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as f:
        for chunk in iter(lambda: f.read(1 << 16), b""):
            h.update(chunk)
    return h.hexdigest()


def manifest_path(out_dir: Path, stage: str) -> Path:
    return Path(out_dir) / "manifests" / f"{stage}.json"


def hash_files(out_dir: Path, paths) -> dict:
    out_dir = Path(out_dir)
    hashes = {}
    for p in paths:
        p = Path(p)
        if p.is_relative_to(out_dir):
            key = str(p.relative_to(out_dir))
        else:
            # files outside the run dir keep an absolute key so later
            # verification does not depend on the working directory
            key = str(p.resolve())
        hashes[key] = file_sha256(p)
    return hashes


def write_manifest(out_dir: Path, stage: str, config_slice: dict,
                   inputs: list, outputs: list, notes: dict = None) -> None:
    doc = {
        "stage": stage,
        "config": config_slice,
        "inputs": hash_files(out_dir, inputs),
        "outputs": hash_files(out_dir, outputs),
    }
    if notes:
        # informational only (e.g. train wall seconds); never part of the
        # up-to-date decision, so it cannot break idempotence
        doc["notes"] = notes
    path = manifest_path(out_dir, stage)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(
        json.dumps(doc, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )


def _resolve(out_dir: Path, key: str) -> Path:
    p = Path(key)
    return p if p.is_absolute() else Path(out_dir) / p


def up_to_date(out_dir: Path, stage: str, config_slice: dict, inputs: list) -> bool:
    """True when the stage can be skipped: manifest present, same config
    slice, and every recorded input/output file still hashes the same."""
    path = manifest_path(out_dir, stage)
    if not path.exists():
        return False
    doc = json.loads(path.read_text(encoding="utf-8"))
    if doc.get("config") != config_slice:
        return False
    current_inputs = hash_files(out_dir, inputs)
    if doc.get("inputs") != current_inputs:
        return False
    for key, digest in doc.get("outputs", {}).items():
        target = _resolve(out_dir, key)
        if not target.exists() or file_sha256(target) != digest:
            return False
    return True


def verify_run(out_dir: Path) -> list:
    """Recompute every manifest's hashes; returns drift messages."""
    out_dir = Path(out_dir)
    problems = []
    manifest_dir = out_dir / "manifests"
    if not manifest_dir.is_dir():
        return [f"no manifests under {out_dir}"]
    for path in sorted(manifest_dir.glob("*.json")):
        doc = json.loads(path.read_text(encoding="utf-8"))
        stage = doc.get("stage", path.stem)
        for role in ("inputs", "outputs"):
            for key, digest in doc.get(role, {}).items():
                target = _resolve(out_dir, key)
                if not target.exists():
                    problems.append(f"{stage}: missing {role[:-1]} {key}")
                elif file_sha256(target) != digest:
                    problems.append(f"{stage}: {role[:-1]} {key} has drifted")
    return problems
