from __future__ import annotations

from pathlib import Path
from typing import Iterable

from ..fixtures import fixture_command
from ..model.spec import (
    BenchmarkSpec,
    ExplicitDomain,
    QualitativeClaim,
    RunPolicy,
    Variant,
)
from ..project import ProjectFile, project_file_path, save_project
from .settings import PREFIX, Settings


def example_project() -> ProjectFile:
    """The sort comparison: list quicksort against list mergesort."""
    sort = BenchmarkSpec(
        id="sort",
        command_template=fixture_command("sortbench"),
        env_template={"IMPL": "{impl}", "SIZE": "{size}", "NITERS": "{niters}", "SEED": "1"},
        params={
            "size": ExplicitDomain(values=["10_000"]),
            "niters": ExplicitDomain(values=["30"]),
        },
        variants=[
            Variant(name="quicksort", bindings={"impl": "quicksort"}),
            Variant(name="mergesort", bindings={"impl": "mergesort"}),
        ],
        run_policy=RunPolicy(),
        tags=["micro"],
    )
    claim = QualitativeClaim(
        claim_id="mergesort-faster",
        subject_variant="mergesort",
        reference_variant="quicksort",
        spec_ids=["sort"],
    )
    return ProjectFile(specs=[sort], claims=[claim])


def _kv_lines(settings: Settings) -> list[str]:
    out: list[str] = ["# metibench settings"]
    out.append(f"{PREFIX}MODE={settings.mode}")
    out.append(f"{PREFIX}LOG_LEVEL={settings.log_level}")
    out.append(f"# {PREFIX}TIMEOUT=60")
    out.append(f"# {PREFIX}GNUPLOT=/usr/bin/gnuplot")
    return out


def _should_remove(line: str, keys: Iterable[str]) -> bool:
    s = line.strip()
    if not s or s.startswith("#"):
        return False
    if "=" not in s:
        return False
    k = s.split("=", 1)[0].strip()
    if not k.startswith(PREFIX):
        return False
    return k[len(PREFIX) :] in set(keys)


def upsert_settings_env(env_path: Path, settings: Settings) -> None:
    env_path.parent.mkdir(parents=True, exist_ok=True)
    existing = env_path.read_text(encoding="utf-8") if env_path.exists() else ""
    lines = existing.splitlines()

    kept: list[str] = [ln for ln in lines if not _should_remove(ln, ("MODE", "LOG_LEVEL"))]
    kept = [ln for ln in kept if ln.strip() != "# metibench settings"]

    if kept and kept[-1].strip():
        kept.append("")

    kept.extend(_kv_lines(settings))
    kept.append("")
    env_path.write_text("\n".join(kept), encoding="utf-8")


def scaffold_project(root: Path, settings: Settings | None = None) -> Path:
    """Write an example benchspec.json and the .env settings block."""
    root.mkdir(parents=True, exist_ok=True)
    save_project(root, example_project())
    upsert_settings_env(root / ".env", settings or Settings())
    return project_file_path(root)
