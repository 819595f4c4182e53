from decimal import Decimal

import pytest

from optjudge.errors import OutOfOrderError, StoreCorruptError
from optjudge.manifest import Direction, InstanceEntry, ProblemManifest, Visibility
from optjudge.scoring import InstanceResult, build_report
from optjudge.store import (
    SubmissionRecord,
    check_throttle,
    leaderboard,
    load_records,
    record_submission,
)
from optjudge.verdicts import accepted


def _manifest(problem_id="ruins", direction=Direction.MAXIMIZE, frequency=180):
    return ProblemManifest(
        problem_id=problem_id,
        direction=direction,
        instances=[InstanceEntry("i.in", Visibility.PUBLIC, 10)],
        frequency_minutes=frequency,
        description_path="d.md",
    )


def _record(user="alice", problem_id="ruins", at=0, score=10):
    report = build_report(
        problem_id, {"i.in": InstanceResult(accepted(score), 0.5)}, Direction.MAXIMIZE
    )
    return SubmissionRecord(user, problem_id, at, report)


def test_missing_store_is_empty_history(tmp_path):
    assert load_records(tmp_path / "absent.log") == []


def test_append_and_reload(tmp_path):
    path = tmp_path / "sub.log"
    record_submission(_record(at=100), path)
    record_submission(_record(at=200, score=12), path)
    records = load_records(path)
    assert [r.submitted_at for r in records] == [100, 200]
    assert records[1].report.aggregate == Decimal(12)


def test_append_preserves_existing_bytes(tmp_path):
    path = tmp_path / "sub.log"
    for at in range(5):
        record_submission(_record(at=at), path)
    before = path.read_text().splitlines()
    record_submission(_record(at=10), path)
    after = path.read_text().splitlines()
    assert len(after) == 6
    assert after[:5] == before


def test_out_of_order_append_rejected(tmp_path):
    path = tmp_path / "sub.log"
    record_submission(_record(at=500), path)
    with pytest.raises(OutOfOrderError):
        record_submission(_record(at=499), path)


def test_corrupt_line_cites_number(tmp_path):
    path = tmp_path / "sub.log"
    record_submission(_record(at=1), path)
    with path.open("a") as fh:
        fh.write("{not json\n")
    with pytest.raises(StoreCorruptError) as exc:
        load_records(path)
    assert exc.value.line_number == 2


def test_throttle_blocked_with_exact_remaining():
    records = [_record(at=0)]
    decision = check_throttle("alice", _manifest(frequency=180), now=3600, records=records)
    assert not decision.allowed
    assert decision.retry_after_seconds == 7200


def test_throttle_boundary_inclusive():
    records = [_record(at=0)]
    decision = check_throttle("alice", _manifest(frequency=120), now=7200, records=records)
    assert decision.allowed


def test_throttle_zero_frequency_never_blocks():
    records = [_record(at=0), _record(at=1)]
    decision = check_throttle("alice", _manifest(frequency=0), now=1, records=records)
    assert decision.allowed


def test_throttle_ignores_other_users_and_problems():
    records = [_record(user="bob", at=0), _record(problem_id="shop", at=0)]
    decision = check_throttle("alice", _manifest(frequency=180), now=1, records=records)
    assert decision.allowed


def test_throttle_allowed_exactly_at_window_after_latest():
    manifest = _manifest(frequency=3)
    records = [_record(at=0), _record(at=100)]
    assert not check_throttle("alice", manifest, now=100 + 179, records=records).allowed
    assert check_throttle("alice", manifest, now=100 + 180, records=records).allowed


def test_leaderboard_orders_by_best():
    manifest = _manifest(direction=Direction.MAXIMIZE)
    records = [_record(user="a", at=0, score=12), _record(user="b", at=1, score=15)]
    rows = leaderboard(manifest, records)
    assert [r.user for r in rows] == ["b", "a"]


def test_leaderboard_minimize_prefers_small():
    manifest = _manifest(direction=Direction.MINIMIZE)
    records = [_record(user="a", at=0, score=12), _record(user="b", at=1, score=15)]
    rows = leaderboard(manifest, records)
    assert [r.user for r in rows] == ["a", "b"]


def test_leaderboard_tie_breaks_on_time_then_name():
    manifest = _manifest()
    records = [
        _record(user="late", at=5, score=12),
        _record(user="early", at=1, score=12),
        _record(user="alate", at=5, score=12),
    ]
    rows = leaderboard(manifest, records)
    assert [r.user for r in rows] == ["early", "alate", "late"]


def test_leaderboard_keeps_best_per_user():
    manifest = _manifest(direction=Direction.MAXIMIZE)
    records = [_record(user="a", at=0, score=10), _record(user="a", at=9, score=99)]
    rows = leaderboard(manifest, records)
    assert len(rows) == 1
    assert rows[0].best == Decimal(99)
    assert rows[0].submitted_at == 9


def test_leaderboard_empty_store():
    assert leaderboard(_manifest(), []) == []


def test_leaderboard_deterministic():
    manifest = _manifest()
    records = [_record(user=f"u{i}", at=i, score=i) for i in range(10)]
    assert leaderboard(manifest, records) == leaderboard(manifest, list(records))
