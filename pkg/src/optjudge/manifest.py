"""Problem manifests: the problem.toml file that defines a suite.

A suite directory holds one ``problem.toml`` next to an ``instances/``
directory with the ``*.in`` files it lists (and, optionally, matching
``*.out`` expected-output files).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from .errors import InvariantError, ManifestParseError, MissingFileError

PROBLEM_ID_RE = re.compile(r"[a-z0-9-]+\Z")
# Restricting names to this charset keeps the TOML writer escape-free.
SAFE_NAME_RE = re.compile(r"[A-Za-z0-9._/-]+\Z")

MANIFEST_FILENAME = "problem.toml"
INSTANCES_DIRNAME = "instances"


class Direction(str, Enum):
    MINIMIZE = "minimize"
    MAXIMIZE = "maximize"


class Visibility(str, Enum):
    PUBLIC = "public"
    PRIVATE = "private"


@dataclass(frozen=True)
class InstanceEntry:
    name: str
    visibility: Visibility
    time_limit_seconds: int


@dataclass
class ProblemManifest:
    """Identity, scoring direction, instances, and submission policy of a problem."""

    problem_id: str
    direction: Direction
    instances: list[InstanceEntry]
    frequency_minutes: int  # 0 means unthrottled
    description_path: str
    declared_instances: int | None = None
    declared_total_seconds: int | None = None
    root: Path | None = field(default=None, compare=False, repr=False)

    def validate(self) -> None:
        if not PROBLEM_ID_RE.fullmatch(self.problem_id):
            raise InvariantError(f"problem_id {self.problem_id!r} must match [a-z0-9-]+")
        if self.frequency_minutes < 0:
            raise InvariantError("frequency_minutes must be non-negative")
        if not SAFE_NAME_RE.fullmatch(self.description_path):
            raise InvariantError(f"description_path {self.description_path!r} has unsupported characters")
        if not self.instances:
            raise ManifestParseError("no instances")
        seen: set[str] = set()
        for entry in self.instances:
            if not SAFE_NAME_RE.fullmatch(entry.name):
                raise InvariantError(f"instance name {entry.name!r} has unsupported characters")
            if not entry.name.endswith(".in"):
                raise InvariantError(f"instance name {entry.name!r} must end with .in")
            if entry.name in seen:
                raise InvariantError(f"duplicate instance name {entry.name!r}")
            seen.add(entry.name)
            if entry.time_limit_seconds < 1:
                raise InvariantError(f"instance {entry.name!r}: time limit must be >= 1 s")

    def total_time_seconds(self) -> int:
        return sum(e.time_limit_seconds for e in self.instances)

    def selected(self, visibility: str = "all") -> list[InstanceEntry]:
        """Instances visible under the given filter ("public" or "all")."""
        if visibility == "all":
            return list(self.instances)
        if visibility == "public":
            return [e for e in self.instances if e.visibility is Visibility.PUBLIC]
        raise ValueError(f"visibility filter must be 'public' or 'all', not {visibility!r}")

    def instance_path(self, name: str) -> Path:
        if self.root is None:
            raise ValueError("manifest has no root directory (not loaded from disk)")
        return self.root / INSTANCES_DIRNAME / name

    def expected_output_path(self, name: str) -> Path | None:
        """Path of the matching .out file, if one is shipped with the suite."""
        path = self.instance_path(name).with_suffix(".out")
        return path if path.is_file() else None


def _require(table: dict, key: str, kind: type, where: str = "manifest"):
    if key not in table:
        raise ManifestParseError(f"{where}: missing field {key!r}")
    value = table[key]
    if kind is int and isinstance(value, bool) or not isinstance(value, kind):
        raise ManifestParseError(f"{where}: field {key!r} must be {kind.__name__}, got {type(value).__name__}")
    return value


def load_manifest(path: str | Path) -> ProblemManifest:
    """Parse and validate a problem.toml; checks every listed instance file exists."""
    path = Path(path)
    try:
        raw = path.read_bytes()
    except OSError as exc:
        raise ManifestParseError(f"cannot read {path}: {exc}") from exc
    try:
        data = tomllib.loads(raw.decode("utf-8"))
    except (UnicodeDecodeError, tomllib.TOMLDecodeError) as exc:
        raise ManifestParseError(f"{path}: {exc}") from exc

    problem_id = _require(data, "problem_id", str)
    direction_raw = _require(data, "direction", str)
    try:
        direction = Direction(direction_raw)
    except ValueError:
        raise ManifestParseError(f"field 'direction': expected 'minimize' or 'maximize', got {direction_raw!r}") from None
    frequency = _require(data, "frequency_minutes", int)
    description_path = _require(data, "description_path", str)

    entries: list[InstanceEntry] = []
    for i, table in enumerate(data.get("instance", [])):
        where = f"instance #{i + 1}"
        if not isinstance(table, dict):
            raise ManifestParseError(f"{where}: expected a table")
        name = _require(table, "name", str, where)
        vis_raw = _require(table, "visibility", str, where)
        try:
            visibility = Visibility(vis_raw)
        except ValueError:
            raise ManifestParseError(f"{where}: visibility must be 'public' or 'private', got {vis_raw!r}") from None
        limit = _require(table, "time_limit_seconds", int, where)
        entries.append(InstanceEntry(name, visibility, limit))

    declared_instances = data.get("declared_instances")
    declared_total = data.get("declared_total_seconds")
    for key, value in (("declared_instances", declared_instances), ("declared_total_seconds", declared_total)):
        if value is not None and (isinstance(value, bool) or not isinstance(value, int)):
            raise ManifestParseError(f"field {key!r} must be an integer")

    manifest = ProblemManifest(
        problem_id=problem_id,
        direction=direction,
        instances=entries,
        frequency_minutes=frequency,
        description_path=description_path,
        declared_instances=declared_instances,
        declared_total_seconds=declared_total,
        root=path.parent,
    )
    manifest.validate()

    missing = [e.name for e in entries if not manifest.instance_path(e.name).is_file()]
    if missing:
        raise MissingFileError(missing)
    return manifest


def write_manifest(manifest: ProblemManifest, path: str | Path) -> None:
    """Serialize a validated manifest; load_manifest(write_manifest(m)) == m."""
    manifest.validate()
    lines = [
        f'problem_id = "{manifest.problem_id}"',
        f'direction = "{manifest.direction.value}"',
        f"frequency_minutes = {manifest.frequency_minutes}",
        f'description_path = "{manifest.description_path}"',
    ]
    if manifest.declared_instances is not None:
        lines.append(f"declared_instances = {manifest.declared_instances}")
    if manifest.declared_total_seconds is not None:
        lines.append(f"declared_total_seconds = {manifest.declared_total_seconds}")
    for entry in manifest.instances:
        lines += [
            "",
            "[[instance]]",
            f'name = "{entry.name}"',
            f'visibility = "{entry.visibility.value}"',
            f"time_limit_seconds = {entry.time_limit_seconds}",
        ]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def split_budget(total_seconds: int, count: int) -> list[int]:
    """Spread a total time budget over count instances, each >= 1 s, summing exactly."""
    if count < 1:
        raise ValueError("count must be >= 1")
    if total_seconds < count:
        raise ValueError(f"budget {total_seconds} s cannot give {count} instances >= 1 s each")
    base, rem = divmod(total_seconds, count)
    return [base + 1] * rem + [base] * (count - rem)
