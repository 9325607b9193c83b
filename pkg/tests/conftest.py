from __future__ import annotations

from pathlib import Path
from typing import Callable

import pytest

from metibench.envcheck import EnvironmentFingerprint
from metibench.fixtures import fixture_command
from metibench.model import BenchmarkSpec, ConcreteInvocation, Measurement, ParamPoint, ResultSet, RunPolicy, Variant
from metibench.project import Project, ProjectFile, save_project
from metibench.runner import Execution


class FakeExecutor:
    """Deterministic stand-in for process execution.

    ``cost`` maps an invocation to (wall time, exit status); every call is
    recorded in order.
    """

    def __init__(self, cost: Callable[[ConcreteInvocation], float | tuple[float, int]]):
        self.cost = cost
        self.calls: list[ConcreteInvocation] = []

    def __call__(self, inv: ConcreteInvocation, timeout: float | None = None) -> Execution:
        self.calls.append(inv)
        out = self.cost(inv)
        wall, status = out if isinstance(out, tuple) else (out, 0)
        return Execution(
            measurement=Measurement(
                wall_time=wall, user_time=wall * 0.95, system_time=wall * 0.01, max_rss=8 << 20, exit_status=status
            ),
            output_tail="" if status == 0 else "boom\n",
        )

    def variants_called(self) -> list[str]:
        return [c.variant_name for c in self.calls]


def linear_cost(fixed: float, per_iteration: float, param: str = "niters"):
    def cost(inv: ConcreteInvocation) -> float:
        return fixed + per_iteration * int(inv.param_point.assignments[param])

    return cost


def make_rs(
    walls: list[float],
    variant: str = "a",
    spec_id: str = "s",
    session_id: str = "sess-1",
    point: dict[str, str] | None = None,
    system: float = 0.0,
) -> ResultSet:
    return ResultSet(
        spec_id=spec_id,
        variant_name=variant,
        param_point=ParamPoint(assignments=point or {}),
        measurements=[
            Measurement(wall_time=w, user_time=w, system_time=system * w) for w in walls
        ],
        session_id=session_id,
        fingerprint_id="fp",
    )


def make_fingerprint(**overrides) -> EnvironmentFingerprint:
    fields = dict(
        cpu_model="Test CPU",
        governor="performance",
        frequency_fixed=True,
        turbo_enabled=False,
        on_ac_power=True,
        os_descriptor="Linux-test",
        tool_version="0.1.0",
    )
    fields.update(overrides)
    return EnvironmentFingerprint.build(**fields)


@pytest.fixture
def fake_executor():
    return FakeExecutor


@pytest.fixture
def fingerprint() -> EnvironmentFingerprint:
    return make_fingerprint()


@pytest.fixture
def synthetic_cmd() -> str:
    return fixture_command("synthetic")


@pytest.fixture
def synthetic_spec(synthetic_cmd) -> BenchmarkSpec:
    return BenchmarkSpec(
        id="synth",
        command_template=synthetic_cmd,
        env_template={"BASE_MS": "{base}", "NITERS": "{niters}", "MODE": "sleep"},
        params={"niters": ["1"]},
        variants=[
            Variant(name="fast", bindings={"base": "5"}),
            Variant(name="slow", bindings={"base": "15"}),
        ],
        run_policy=RunPolicy.fixed(3),
    )


@pytest.fixture
def tmp_project(tmp_path: Path, synthetic_spec) -> Project:
    save_project(tmp_path, ProjectFile(specs=[synthetic_spec]))
    return Project.open(tmp_path)
