"""Append-only submission store, throttling, and leaderboards.

The store is one line-delimited JSON file.  Appends are serialized with an
exclusive file lock (single writer); readers need no lock because records
are immutable once written.
"""

from __future__ import annotations

import fcntl
import json
from dataclasses import dataclass
from decimal import Decimal
from pathlib import Path

from .errors import OutOfOrderError, StoreCorruptError
from .manifest import Direction, ProblemManifest
from .scoring import EvaluationReport, report_from_jsonable, report_to_jsonable


@dataclass(frozen=True)
class SubmissionRecord:
    user: str
    problem_id: str
    submitted_at: int  # epoch seconds
    report: EvaluationReport


@dataclass(frozen=True)
class ThrottleDecision:
    allowed: bool
    retry_after_seconds: int = 0


@dataclass(frozen=True)
class LeaderboardRow:
    user: str
    best: Decimal
    submitted_at: int


def _record_to_line(record: SubmissionRecord) -> str:
    payload = {
        "user": record.user,
        "problem_id": record.problem_id,
        "submitted_at": record.submitted_at,
        "report": report_to_jsonable(record.report),
    }
    return json.dumps(payload, separators=(",", ":"), sort_keys=True)


def _record_from_line(line: str, line_number: int) -> SubmissionRecord:
    try:
        data = json.loads(line)
        return SubmissionRecord(
            user=data["user"],
            problem_id=data["problem_id"],
            submitted_at=int(data["submitted_at"]),
            report=report_from_jsonable(data["report"]),
        )
    except (ValueError, KeyError, TypeError) as exc:
        raise StoreCorruptError(line_number, f"unparseable record ({exc})") from exc


def load_records(path: str | Path) -> list[SubmissionRecord]:
    """All records in file order; a missing store file is an empty history."""
    path = Path(path)
    if not path.exists():
        return []
    records = []
    with path.open("r", encoding="utf-8") as fh:
        for number, line in enumerate(fh, start=1):
            line = line.strip()
            if line:
                records.append(_record_from_line(line, number))
    return records


def check_throttle(
    user: str,
    problem: ProblemManifest,
    now: int,
    records: list[SubmissionRecord],
) -> ThrottleDecision:
    """Blocked iff the user's latest submission to this problem is fresher than the
    configured frequency; exactly frequency*60 elapsed seconds is allowed again."""
    if problem.frequency_minutes == 0:
        return ThrottleDecision(allowed=True)
    window = problem.frequency_minutes * 60
    latest = None
    for record in records:
        if record.user == user and record.problem_id == problem.problem_id:
            if latest is None or record.submitted_at > latest:
                latest = record.submitted_at
    if latest is None:
        return ThrottleDecision(allowed=True)
    elapsed = now - latest
    if elapsed < window:
        return ThrottleDecision(allowed=False, retry_after_seconds=window - elapsed)
    return ThrottleDecision(allowed=True)


def record_submission(record: SubmissionRecord, store_path: str | Path) -> None:
    """Append one record under an exclusive lock, enforcing timestamp monotonicity."""
    path = Path(store_path)
    line = _record_to_line(record)
    with path.open("a+", encoding="utf-8") as fh:
        fcntl.flock(fh.fileno(), fcntl.LOCK_EX)
        try:
            fh.seek(0)
            last_line = None
            last_number = 0
            for number, existing in enumerate(fh, start=1):
                if existing.strip():
                    last_line, last_number = existing.strip(), number
            if last_line is not None:
                last = _record_from_line(last_line, last_number)
                if record.submitted_at < last.submitted_at:
                    raise OutOfOrderError(
                        f"submitted_at {record.submitted_at} precedes last stored {last.submitted_at}"
                    )
            fh.seek(0, 2)
            fh.write(line + "\n")
            fh.flush()
        finally:
            fcntl.flock(fh.fileno(), fcntl.LOCK_UN)


def leaderboard(problem: ProblemManifest, records: list[SubmissionRecord]) -> list[LeaderboardRow]:
    """One row per user keyed by their best aggregate; ties break on earlier
    timestamp, then lexicographic user name."""
    minimize = problem.direction is Direction.MINIMIZE
    best: dict[str, tuple[Decimal, int]] = {}
    for record in records:
        if record.problem_id != problem.problem_id:
            continue
        score = record.report.aggregate
        current = best.get(record.user)
        if current is None:
            best[record.user] = (score, record.submitted_at)
            continue
        better = score < current[0] if minimize else score > current[0]
        if better or (score == current[0] and record.submitted_at < current[1]):
            best[record.user] = (score, record.submitted_at)
    rows = [LeaderboardRow(user, score, at) for user, (score, at) in best.items()]
    rows.sort(key=lambda r: (r.best if minimize else -r.best, r.submitted_at, r.user))
    return rows
