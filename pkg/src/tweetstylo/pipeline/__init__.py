"""Staged, resumable batch pipeline: corpus in, metrics and explanations out."""

from .config import DEFAULT_TOPK, RunConfig, load_config, write_resolved
from .lock import RunLockedError, run_lock
from .manifest import up_to_date, verify_run, write_manifest
from .stages import STAGES, StageError, run_stage

__all__ = [
    "DEFAULT_TOPK",
    "RunConfig",
    "RunLockedError",
    "STAGES",
    "StageError",
    "load_config",
    "run_lock",
    "run_stage",
    "up_to_date",
    "verify_run",
    "write_manifest",
    "write_resolved",
]
