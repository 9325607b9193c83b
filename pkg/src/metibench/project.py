from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from pydantic import Field, ValidationError, model_validator

from .exceptions import ProjectFileError
from .journal import Journal
from .model.spec import BenchmarkSpec, Frozen, NoiseThresholds, QualitativeClaim, SweepSpec
from .store import ResultStore, content_hash

PROJECT_FILE = "benchspec.json"
FORMAT_VERSION = 1


class ProjectFile(Frozen):
    """Contents of benchspec.json."""

    format_version: int = FORMAT_VERSION
    specs: list[BenchmarkSpec] = Field(default_factory=list)
    claims: list[QualitativeClaim] = Field(default_factory=list)
    sweeps: dict[str, SweepSpec] = Field(default_factory=dict)
    noise: NoiseThresholds = Field(default_factory=NoiseThresholds)

    @model_validator(mode="after")
    def _unique_ids(self) -> "ProjectFile":
        seen: set[str] = set()
        for s in self.specs:
            if s.id in seen:
                raise ValueError(f"duplicate spec id {s.id!r}")
            seen.add(s.id)
        claims = [c.claim_id for c in self.claims]
        if len(claims) != len(set(claims)):
            raise ValueError("duplicate claim id")
        return self

    def spec(self, spec_id: str) -> BenchmarkSpec:
        for s in self.specs:
            if s.id == spec_id:
                return s
        raise ProjectFileError(f"no spec named {spec_id!r} in {PROJECT_FILE}")


def project_file_path(root: Path) -> Path:
    return Path(root) / PROJECT_FILE


def load_project(root: Path) -> ProjectFile:
    """Load and strictly validate benchspec.json."""
    path = project_file_path(root)
    if not path.exists():
        raise ProjectFileError(f"{PROJECT_FILE} not found in {Path(root).resolve()}\nRun 'metibench init' first.")
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise ProjectFileError(f"{PROJECT_FILE} is not valid JSON: {e}") from e
    try:
        return ProjectFile.model_validate(data)
    except ValidationError as e:
        raise ProjectFileError(f"invalid {PROJECT_FILE}:\n{e}") from e


def save_project(root: Path, project: ProjectFile) -> None:
    path = project_file_path(root)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(project.model_dump_json(indent=2, exclude_none=True) + "\n", encoding="utf-8")


def spec_file_hash(root: Path) -> str:
    path = project_file_path(root)
    return content_hash(path.read_bytes()) if path.exists() else ""


def select_specs(
    project: ProjectFile, only: list[str] | None = None, skip: list[str] | None = None
) -> list[BenchmarkSpec]:
    """Specs to run: ``--only`` overrides ``enabled``, ``--skip`` always wins."""
    known = {s.id for s in project.specs}
    for name in [*(only or []), *(skip or [])]:
        if name not in known:
            raise ProjectFileError(f"unknown spec {name!r}; known: {', '.join(sorted(known)) or '(none)'}")
    if only:
        chosen = [s for s in project.specs if s.id in only]
    else:
        chosen = [s for s in project.specs if s.enabled]
    return [s for s in chosen if s.id not in (skip or [])]


@dataclass
class Project:
    root: Path
    file: ProjectFile
    store: ResultStore
    journal: Journal

    @classmethod
    def open(cls, root: Path) -> "Project":
        root = Path(root)
        store = ResultStore(root)
        return cls(root=root, file=load_project(root), store=store, journal=Journal(root, store))
