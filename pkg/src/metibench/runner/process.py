"""
Measure one child process.

Wall time is taken around the child's lifetime; user/system time and peak
memory come from the kernel's accounting for that child (``wait4``); where
that call is missing they are sampled through psutil while it runs. Output
is captured to a temporary file, never inherited, and only its tail is kept.
"""

from __future__ import annotations

import logging
import os
import subprocess
import sys
import tempfile
import threading
import time
from typing import Callable

import psutil
from pydantic import Field

from ..exceptions import RunTimeout, SpawnFailure
from ..model.results import Measurement
from ..model.spec import ConcreteInvocation, Frozen

log = logging.getLogger(__name__)

TAIL_BYTES = 4096
# ru_maxrss is in bytes on macOS, kilobytes elsewhere
_RSS_UNIT = 1 if sys.platform == "darwin" else 1024
SAMPLE_INTERVAL = 0.005


class Execution(Frozen):
    measurement: Measurement
    output_tail: str = ""
    notes: list[str] = Field(default_factory=list)


Executor = Callable[[ConcreteInvocation, "float | None"], Execution]


def _tail(f) -> str:
    f.seek(0, os.SEEK_END)
    size = f.tell()
    f.seek(max(0, size - TAIL_BYTES))
    return f.read().decode("utf-8", errors="replace")


def _sampled_wait(proc: subprocess.Popen) -> tuple[float, float, int, bool]:
    """Wait for ``proc`` while polling its CPU times and resident memory through psutil.

    Returns (user, system, peak rss, sampled); the last interval before exit is
    not seen, so the figures are lower bounds.
    """
    user = system = 0.0
    peak = 0
    sampled = False
    try:
        watched: psutil.Process | None = psutil.Process(proc.pid)
    except psutil.Error:
        watched = None
    while proc.poll() is None:
        if watched is not None:
            try:
                with watched.oneshot():
                    times = watched.cpu_times()
                    mem = watched.memory_info()
            except psutil.Error:
                watched = None
            else:
                user, system = times.user, times.system
                peak = max(peak, getattr(mem, "peak_wset", 0) or mem.rss)
                sampled = True
        time.sleep(SAMPLE_INTERVAL)
    return user, system, peak, sampled


def execute(inv: ConcreteInvocation, timeout: float | None = None) -> Execution:
    env = os.environ.copy()
    env.update(inv.env)
    notes: list[str] = []
    with tempfile.TemporaryFile() as out:
        start = time.perf_counter()
        try:
            proc = subprocess.Popen(
                inv.argv,
                env=env,
                stdin=subprocess.DEVNULL,
                stdout=out,
                stderr=subprocess.STDOUT,
            )
        except OSError as e:
            raise SpawnFailure(f"cannot start {inv.argv[0]!r}: {e.strerror or e}") from e

        expired = threading.Event()

        def _kill() -> None:
            expired.set()
            try:
                proc.kill()
            except OSError:
                pass

        timer = threading.Timer(timeout, _kill) if timeout else None
        if timer:
            timer.daemon = True
            timer.start()
        try:
            if hasattr(os, "wait4"):
                _, status, usage = os.wait4(proc.pid, 0)
                wall = time.perf_counter() - start
                proc.returncode = os.waitstatus_to_exitcode(status)
                user, system = usage.ru_utime, usage.ru_stime
                max_rss = int(usage.ru_maxrss) * _RSS_UNIT
            else:
                user, system, max_rss, sampled = _sampled_wait(proc)
                wall = time.perf_counter() - start
                if sampled:
                    notes.append("MetricApproximate: user/system time and max_rss were sampled while the child ran")
                else:
                    notes.append("MetricUnavailable: user/system time and max_rss could not be read for this child")
        finally:
            if timer:
                timer.cancel()

        if expired.is_set():
            raise RunTimeout(f"killed after {timeout}s: {inv.display()}")

        return Execution(
            measurement=Measurement(
                wall_time=wall,
                user_time=max(0.0, user),
                system_time=max(0.0, system),
                max_rss=max(0, max_rss),
                exit_status=proc.returncode,
            ),
            output_tail=_tail(out),
            notes=notes,
        )


def run_once(inv: ConcreteInvocation, timeout: float | None = None) -> Measurement:
    return execute(inv, timeout).measurement
