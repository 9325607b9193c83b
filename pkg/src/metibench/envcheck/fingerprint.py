"""
Machine-state fingerprints.

Reads CPU frequency scaling, turbo/boost and power state from the operating
system on a best-effort basis. Anything that cannot be read is recorded as
unknown (``None``) rather than guessed.

Linux sources:
1. /sys/devices/system/cpu/cpu*/cpufreq/scaling_{governor,min_freq,max_freq}
2. /sys/devices/system/cpu/intel_pstate/no_turbo, /sys/devices/system/cpu/cpufreq/boost
3. psutil.sensors_battery(), then /sys/class/power_supply/*/online for mains supplies
"""

from __future__ import annotations

import hashlib
import json
import logging
import platform
from datetime import datetime
from pathlib import Path
from typing import Callable, Literal

import psutil
from pydantic import Field

from .. import __version__
from ..model.spec import Diagnostic, Frozen

log = logging.getLogger(__name__)

SYSFS_ROOT = Path("/sys")
CPUINFO = Path("/proc/cpuinfo")

HASHED_FIELDS = (
    "cpu_model",
    "governor",
    "frequency_fixed",
    "turbo_enabled",
    "on_ac_power",
    "os_descriptor",
    "tool_version",
)


class EnvironmentFingerprint(Frozen):
    fingerprint_id: str = ""
    cpu_model: str = "unknown"
    governor: str | None = None
    frequency_fixed: bool | None = None
    turbo_enabled: bool | None = None
    on_ac_power: bool | None = None
    os_descriptor: str = ""
    tool_version: str = __version__
    captured_at: datetime = Field(default_factory=datetime.now)

    @classmethod
    def build(cls, **fields) -> "EnvironmentFingerprint":
        """Construct with ``fingerprint_id`` computed from the hashed fields."""
        draft = cls(**fields)
        return draft.model_copy(update={"fingerprint_id": draft.content_hash()})

    def content_hash(self) -> str:
        payload = {name: getattr(self, name) for name in HASHED_FIELDS}
        blob = json.dumps(payload, sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode("utf-8")).hexdigest()[:16]


class FieldMismatch(Frozen):
    field: str
    kind: Literal["differs", "unverifiable"]
    a: str | bool | None
    b: str | bool | None

    def __str__(self) -> str:
        if self.kind == "unverifiable":
            return f"{self.field}: unverifiable ({self.a!r} vs {self.b!r})"
        return f"{self.field}: {self.a!r} -> {self.b!r}"


def _read(path: Path) -> str | None:
    try:
        return path.read_text(encoding="utf-8").strip()
    except OSError:
        return None


def _cpu_dirs(sysfs: Path) -> list[Path]:
    base = sysfs / "devices" / "system" / "cpu"
    if not base.is_dir():
        return []
    return sorted(
        (p for p in base.glob("cpu[0-9]*") if (p / "cpufreq").is_dir()),
        key=lambda p: int(p.name[3:]),
    )


def _cpu_model(cpuinfo: Path) -> str:
    text = _read(cpuinfo)
    if text:
        for line in text.splitlines():
            key, _, value = line.partition(":")
            if key.strip() in {"model name", "Hardware", "cpu model"} and value.strip():
                return value.strip()
    return platform.processor() or platform.machine() or "unknown"


def _governor(cpus: list[Path]) -> str | None:
    governors = {_read(c / "cpufreq" / "scaling_governor") for c in cpus}
    governors.discard(None)
    if not governors:
        return None
    return ",".join(sorted(governors))


def _frequency_fixed(cpus: list[Path]) -> bool | None:
    if not cpus:
        return None
    for c in cpus:
        lo = _read(c / "cpufreq" / "scaling_min_freq")
        hi = _read(c / "cpufreq" / "scaling_max_freq")
        if lo is None or hi is None:
            return None
        if lo != hi:
            return False
    return True


def _turbo_enabled(sysfs: Path) -> bool | None:
    cpu = sysfs / "devices" / "system" / "cpu"
    no_turbo = _read(cpu / "intel_pstate" / "no_turbo")
    if no_turbo is not None:
        return no_turbo == "0"
    boost = _read(cpu / "cpufreq" / "boost")
    if boost is not None:
        return boost != "0"
    return None


def _mains_online(sysfs: Path) -> bool | None:
    base = sysfs / "class" / "power_supply"
    if not base.is_dir():
        return None
    for supply in base.iterdir():
        if _read(supply / "type") == "Mains":
            online = _read(supply / "online")
            if online is not None:
                return online == "1"
    return None


def _on_ac_power(sysfs: Path, battery_probe: Callable[[], object]) -> bool | None:
    try:
        battery = battery_probe()
    except (AttributeError, NotImplementedError, OSError) as e:
        log.debug("battery probe unavailable: %s", e)
        battery = None
    plugged = getattr(battery, "power_plugged", None)
    if plugged is not None:
        return bool(plugged)
    return _mains_online(sysfs)


def capture_fingerprint(
    *,
    sysfs: Path = SYSFS_ROOT,
    cpuinfo: Path = CPUINFO,
    battery_probe: Callable[[], object] | None = None,
) -> EnvironmentFingerprint:
    probe = battery_probe or getattr(psutil, "sensors_battery", lambda: None)
    cpus = _cpu_dirs(sysfs)
    return EnvironmentFingerprint.build(
        cpu_model=_cpu_model(cpuinfo),
        governor=_governor(cpus),
        frequency_fixed=_frequency_fixed(cpus),
        turbo_enabled=_turbo_enabled(sysfs),
        on_ac_power=_on_ac_power(sysfs, probe),
        os_descriptor=platform.platform(),
    )


def check_environment(fp: EnvironmentFingerprint) -> list[Diagnostic]:
    """Warnings about known noise sources; pure in the fingerprint."""
    out: list[Diagnostic] = []
    if fp.frequency_fixed is False:
        out.append(
            Diagnostic(
                code="GovernorNotFixed",
                message=f"CPU frequency is not fixed (governor: {fp.governor or 'unknown'}); "
                "pin it to a medium-low frequency to avoid thermal slowdowns",
            )
        )
    if fp.turbo_enabled is True:
        out.append(Diagnostic(code="TurboEnabled", message="turbo/boost mode is enabled; disable it while measuring"))
    if fp.on_ac_power is False:
        out.append(Diagnostic(code="OnBattery", message="running on battery; plug the machine into a power source"))
    for name, value in (
        ("frequency_fixed", fp.frequency_fixed),
        ("turbo_enabled", fp.turbo_enabled),
        ("on_ac_power", fp.on_ac_power),
    ):
        if value is None:
            out.append(Diagnostic(code="Unknown", message=f"could not determine {name}", severity="note"))
    return out


def remediation_hints(warnings: list[Diagnostic], sysfs: Path = SYSFS_ROOT) -> dict[str, str]:
    """Commands the user may run to fix a warning; never executed by metibench."""
    if platform.system() != "Linux":
        return {}
    cpu = sysfs / "devices" / "system" / "cpu"
    hints = {
        "GovernorNotFixed": "sudo cpupower frequency-set --min 2GHz --max 2GHz",
        "TurboEnabled": (
            f"echo 1 | sudo tee {cpu / 'intel_pstate' / 'no_turbo'}"
            if (cpu / "intel_pstate").is_dir()
            else f"echo 0 | sudo tee {cpu / 'cpufreq' / 'boost'}"
        ),
    }
    return {w.code: hints[w.code] for w in warnings if w.code in hints}


def diff_fingerprints(a: EnvironmentFingerprint, b: EnvironmentFingerprint) -> list[FieldMismatch]:
    out: list[FieldMismatch] = []
    for name in HASHED_FIELDS:
        va, vb = getattr(a, name), getattr(b, name)
        if va == vb:
            continue
        kind = "unverifiable" if va is None or vb is None else "differs"
        out.append(FieldMismatch(field=name, kind=kind, a=va, b=vb))
    return out
