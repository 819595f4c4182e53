"""Score aggregation across instances and the per-run evaluation report."""

from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal
from typing import Mapping

from .manifest import Direction
from .verdicts import Verdict, verdict_from_jsonable, verdict_to_jsonable

# A failed instance contributes this on minimize problems (0 on maximize),
# keeping the aggregate monotone per instance.
FAILED_INSTANCE_PENALTY = Decimal(10) ** 9


def aggregate_score(entries: Mapping[str, Verdict], direction: Direction) -> Decimal:
    """Sum of accepted scores; failures add 0 (maximize) or the penalty (minimize)."""
    if not entries:
        raise ValueError("cannot aggregate an empty set of verdicts")
    total = Decimal(0)
    for verdict in entries.values():
        if verdict.accepted:
            total += verdict.score
        elif direction is Direction.MINIMIZE:
            total += FAILED_INSTANCE_PENALTY
    return total


@dataclass(frozen=True)
class InstanceResult:
    verdict: Verdict
    wall_time_seconds: float


@dataclass(frozen=True)
class EvaluationReport:
    problem_id: str
    per_instance: dict[str, InstanceResult]
    aggregate: Decimal


def build_report(problem_id: str, per_instance: dict[str, InstanceResult], direction: Direction) -> EvaluationReport:
    verdicts = {name: res.verdict for name, res in per_instance.items()}
    return EvaluationReport(problem_id, dict(per_instance), aggregate_score(verdicts, direction))


def render_report_lines(report: EvaluationReport) -> list[str]:
    """One machine-parseable line per instance plus a trailing aggregate line."""
    lines = []
    for name, result in report.per_instance.items():
        v = result.verdict
        score = str(v.score) if v.score is not None else "-"
        lines.append(f"{name}\t{v.kind.value}\t{score}\t{v.message}")
    lines.append(f"aggregate\t{report.aggregate}")
    return lines


def report_to_jsonable(report: EvaluationReport) -> dict:
    return {
        "problem_id": report.problem_id,
        "per_instance": {
            name: {**verdict_to_jsonable(res.verdict), "wall_time_seconds": res.wall_time_seconds}
            for name, res in report.per_instance.items()
        },
        "aggregate": str(report.aggregate),
    }


def report_from_jsonable(data: dict) -> EvaluationReport:
    per_instance = {}
    for name, entry in data["per_instance"].items():
        verdict = verdict_from_jsonable(entry)
        per_instance[name] = InstanceResult(verdict, float(entry["wall_time_seconds"]))
    return EvaluationReport(data["problem_id"], per_instance, Decimal(data["aggregate"]))
