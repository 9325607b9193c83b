from __future__ import annotations

import logging
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Literal

from dotenv import load_dotenv

from ..exceptions import MetiBenchError

log = logging.getLogger(__name__)

PREFIX = "METIBENCH_"
KEYS = ("PROJECT_DIR", "MODE", "TIMEOUT", "LOG_LEVEL", "GNUPLOT")


@dataclass
class Settings:
    project_dir: Path = Path(".")
    mode: Literal["mean", "min"] = "mean"
    timeout: float | None = None
    log_level: str = "WARNING"


def _get(env: dict, key: str, default: str | None = None) -> str | None:
    return env.get(f"{PREFIX}{key}", default)


def load_settings() -> Settings:
    """Load runtime settings from the environment (and .env if present).

    Recognized keys: METIBENCH_PROJECT_DIR, METIBENCH_MODE, METIBENCH_TIMEOUT,
    METIBENCH_LOG_LEVEL, METIBENCH_GNUPLOT (read by the plot renderer). Other
    METIBENCH_* variables are ignored with a warning. Variables already set in
    the environment win over .env.
    """
    current_env = Path.cwd() / ".env"
    if current_env.exists():
        load_dotenv(current_env, override=False)
    else:
        load_dotenv(override=False)
    known = {PREFIX + k for k in KEYS}
    for k in sorted(k for k in os.environ if k.startswith(PREFIX) and k not in known):
        log.warning("ignoring unknown setting %s", k)
    env = {k: os.environ[k] for k in known if k in os.environ}

    mode = (_get(env, "MODE", "mean") or "mean").lower()
    if mode not in {"mean", "min"}:
        raise MetiBenchError(f"{PREFIX}MODE must be 'mean' or 'min', got {mode!r}")

    raw_timeout = _get(env, "TIMEOUT")
    timeout: float | None = None
    if raw_timeout:
        try:
            timeout = float(raw_timeout)
        except ValueError:
            raise MetiBenchError(f"{PREFIX}TIMEOUT must be a number of seconds, got {raw_timeout!r}") from None
        if timeout <= 0:
            timeout = None

    return Settings(
        project_dir=Path(_get(env, "PROJECT_DIR", ".") or ".").resolve(),
        mode=mode,  # type: ignore[arg-type]
        timeout=timeout,
        log_level=(_get(env, "LOG_LEVEL", "WARNING") or "WARNING").upper(),
    )
