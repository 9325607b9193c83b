"""
Workload programs used as ground truth by the tests and the example project.

They are plain scripts run in an isolated interpreter (``-I -S``) so that
start-up cost stays small and independent of the harness's own imports.
"""

from __future__ import annotations

import shlex
import sys
from pathlib import Path

FIXTURES = ("synthetic", "sortbench")


def fixture_path(name: str) -> Path:
    if name not in FIXTURES:
        raise ValueError(f"unknown fixture {name!r}")
    return Path(__file__).with_name(f"{name}.py")


def fixture_argv(name: str) -> list[str]:
    return [sys.executable, "-I", "-S", str(fixture_path(name))]


def fixture_command(name: str) -> str:
    """Command line suitable for a spec's ``command_template``."""
    return shlex.join(fixture_argv(name)).replace("{", "{{").replace("}", "}}")
