"""Shared fixtures: fixture-solver commands and throwaway instance suites."""

from __future__ import annotations

import sys
from pathlib import Path

import pytest

from optjudge.manifest import (
    Direction,
    InstanceEntry,
    ProblemManifest,
    Visibility,
    load_manifest,
    write_manifest,
)
from optjudge.problems import ruins

REPO_ROOT = Path(__file__).resolve().parents[1]
SOLVER_DIR = Path(__file__).parent / "fixtures" / "solvers"
SHIPPED_SUITES = REPO_ROOT / "problems"


def solver_cmd(name: str) -> list[str]:
    path = SOLVER_DIR / f"{name}.py"
    assert path.is_file(), f"missing fixture solver {path}"
    return [sys.executable, str(path)]


@pytest.fixture
def ruins_suite(tmp_path):
    """A throwaway 3-instance ruins suite with tiny grids and short limits."""
    return make_ruins_suite(tmp_path / "suite", count=3, time_limit=5)


def make_ruins_suite(
    root: Path,
    count: int = 3,
    time_limit: int = 5,
    private_from: int | None = None,
    frequency_minutes: int = 180,
):
    instances_dir = root / "instances"
    instances_dir.mkdir(parents=True)
    entries = []
    for idx in range(count):
        name = f"i{idx:03d}.in"
        (instances_dir / name).write_text(ruins.generate_ruins(idx + 1, 3, 3))
        private = private_from is not None and idx >= private_from
        entries.append(
            InstanceEntry(
                name,
                Visibility.PRIVATE if private else Visibility.PUBLIC,
                time_limit,
            )
        )
    (root / "description.md").write_text("# test suite\n")
    manifest = ProblemManifest(
        problem_id="ruins",
        direction=Direction.MAXIMIZE,
        instances=entries,
        frequency_minutes=frequency_minutes,
        description_path="description.md",
        declared_instances=count,
        declared_total_seconds=time_limit * count,
    )
    write_manifest(manifest, root / "problem.toml")
    return load_manifest(root / "problem.toml")
