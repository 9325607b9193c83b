from __future__ import annotations

import contextlib
import logging
import os
from pathlib import Path
from typing import Iterator

import psutil

from ..exceptions import StoreLocked

log = logging.getLogger(__name__)

LOCK_NAME = ".metibench.lock"


def _holder(path: Path) -> int | None:
    try:
        return int(path.read_text(encoding="utf-8").strip() or "0")
    except (OSError, ValueError):
        return None


@contextlib.contextmanager
def writer_lock(root: Path) -> Iterator[Path]:
    """Advisory single-writer lock on a project directory.

    A lock file left behind by a process that no longer exists is taken over.
    """
    path = root / LOCK_NAME
    root.mkdir(parents=True, exist_ok=True)
    for attempt in range(2):
        try:
            fd = os.open(path, os.O_CREAT | os.O_EXCL | os.O_WRONLY, 0o644)
            break
        except FileExistsError:
            pid = _holder(path)
            if attempt == 0 and pid is not None and not psutil.pid_exists(pid):
                log.warning("removing stale lock held by pid %d", pid)
                path.unlink(missing_ok=True)
                continue
            raise StoreLocked(f"{root} is locked by another metibench process (pid {pid})") from None
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as f:
            f.write(str(os.getpid()))
        yield path
    finally:
        path.unlink(missing_ok=True)
