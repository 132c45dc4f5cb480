"""One process per run directory, enforced with an O_EXCL lock file."""

import os
from contextlib import contextmanager
from pathlib import Path


class RunLockedError(RuntimeError):
    pass


@contextmanager
def run_lock(out_dir):
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / ".lock"
    try:
        fd = os.open(path, os.O_CREAT | os.O_EXCL | os.O_WRONLY)
    except FileExistsError:
        holder = ""
        try:
            holder = path.read_text(encoding="utf-8").strip()
        except OSError:
            pass
        raise RunLockedError(
            f"{out_dir} is locked by pid {holder or 'unknown'}; "
            f"remove {path} if that process is gone"
        ) from None
    try:
        os.write(fd, str(os.getpid()).encode())
        os.close(fd)
        yield
    finally:
        try:
            path.unlink()
        except OSError:
            pass
