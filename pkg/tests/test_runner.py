import time
from decimal import Decimal

import psutil
import pytest

from optjudge.errors import SpawnError
from optjudge.problems.ruins import judge_ruins
from optjudge.runner import RunStatus, evaluate_suite, run_solver
from optjudge.verdicts import VerdictKind

from conftest import solver_cmd


def test_echo_solver_completes():
    outcome = run_solver(solver_cmd("echo"), b"1 2 3\n", 5)
    assert outcome.status is RunStatus.COMPLETED
    assert outcome.stdout == b"1 2 3\n"
    assert outcome.exit_code == 0


def test_sleeping_solver_times_out():
    start = time.monotonic()
    outcome = run_solver(solver_cmd("sleep"), b"x\n", 1)
    elapsed = time.monotonic() - start
    assert outcome.status is RunStatus.TIMED_OUT
    assert outcome.wall_time_seconds >= 1.0
    assert elapsed < 2.0, "kill must land within the 1 s grace"


def test_crashing_solver_reports_exit_code():
    outcome = run_solver(solver_cmd("crash"), b"x\n", 5)
    assert outcome.status is RunStatus.CRASHED
    assert outcome.exit_code == 3


def test_unspawnable_command_raises():
    with pytest.raises(SpawnError):
        run_solver(["/nonexistent/solver-binary"], b"", 1)


def test_stdout_cap_flags_overflow():
    outcome = run_solver(solver_cmd("flood"), b"x\n", 30, stdout_cap=1 << 20)
    assert outcome.stdout_overflow


def test_child_processes_are_killed():
    outcome = run_solver(solver_cmd("spawner"), b"x\n", 1)
    assert outcome.status is RunStatus.TIMED_OUT
    child_pid = int(outcome.stdout.split()[1])
    deadline = time.monotonic() + 2.0
    while time.monotonic() < deadline:
        if not psutil.pid_exists(child_pid):
            return
        try:
            if psutil.Process(child_pid).status() == psutil.STATUS_ZOMBIE:
                return
        except psutil.NoSuchProcess:
            return
        time.sleep(0.05)
    pytest.fail(f"spawned child {child_pid} still alive past the kill grace")


def test_no_solver_outlives_suite(ruins_suite):
    before = {p.pid for p in psutil.process_iter()}
    evaluate_suite(ruins_suite, judge_ruins, solver_cmd("trivial_ruins"), parallelism=2)
    time.sleep(0.2)
    leftovers = []
    for proc in psutil.process_iter():
        try:
            if proc.pid not in before and "trivial_ruins" in " ".join(proc.cmdline()):
                leftovers.append(proc.pid)
        except (psutil.NoSuchProcess, psutil.AccessDenied):
            continue
    assert not leftovers


def test_stderr_goes_to_log_file(tmp_path, ruins_suite):
    report = evaluate_suite(
        ruins_suite,
        judge_ruins,
        solver_cmd("trivial_ruins"),
        stderr_dir=tmp_path / "logs",
    )
    assert all(r.verdict.accepted for r in report.per_instance.values())
    logs = sorted((tmp_path / "logs").iterdir())
    assert [p.name for p in logs] == [
        "i000.in.stderr.log",
        "i001.in.stderr.log",
        "i002.in.stderr.log",
    ]


def test_suite_reports_identical_across_parallelism(ruins_suite):
    reports = [
        evaluate_suite(ruins_suite, judge_ruins, solver_cmd("trivial_ruins"), parallelism=p)
        for p in (1, 4)
    ]
    verdicts = [
        {name: r.verdict for name, r in report.per_instance.items()} for report in reports
    ]
    assert verdicts[0] == verdicts[1]
    assert reports[0].aggregate == reports[1].aggregate


def test_sleeping_solver_yields_tle_and_zero_aggregate(tmp_path):
    from conftest import make_ruins_suite

    suite = make_ruins_suite(tmp_path / "s", count=2, time_limit=1)
    report = evaluate_suite(suite, judge_ruins, solver_cmd("sleep"))
    kinds = {r.verdict.kind for r in report.per_instance.values()}
    assert kinds == {VerdictKind.TIME_LIMIT_EXCEEDED}
    assert report.aggregate == Decimal(0)
    for result in report.per_instance.values():
        assert result.wall_time_seconds <= 2.0


def test_garbage_solver_yields_format_errors(ruins_suite):
    report = evaluate_suite(ruins_suite, judge_ruins, solver_cmd("garbage"))
    for result in report.per_instance.values():
        assert result.verdict.kind is VerdictKind.FORMAT_ERROR
        assert result.verdict.message


def test_crash_solver_yields_runtime_errors(ruins_suite):
    report = evaluate_suite(ruins_suite, judge_ruins, solver_cmd("crash"))
    for result in report.per_instance.values():
        assert result.verdict.kind is VerdictKind.RUNTIME_ERROR
        assert "3" in result.verdict.message


def test_unspawnable_command_becomes_judge_error_verdicts(ruins_suite):
    report = evaluate_suite(ruins_suite, judge_ruins, ["/nonexistent/solver-binary"])
    for result in report.per_instance.values():
        assert result.verdict.kind is VerdictKind.JUDGE_ERROR


def test_visibility_filter_limits_instances(tmp_path):
    from conftest import make_ruins_suite

    suite = make_ruins_suite(tmp_path / "s", count=4, time_limit=5, private_from=3)
    report = evaluate_suite(suite, judge_ruins, solver_cmd("trivial_ruins"), visibility="public")
    assert set(report.per_instance) == {"i000.in", "i001.in", "i002.in"}


def test_overflowing_solver_gets_format_error(tmp_path):
    from conftest import make_ruins_suite

    suite = make_ruins_suite(tmp_path / "s", count=1, time_limit=30)
    report = evaluate_suite(suite, judge_ruins, solver_cmd("flood"))
    verdict = report.per_instance["i000.in"].verdict
    assert verdict.kind is VerdictKind.FORMAT_ERROR
    assert verdict.message == "output too large"
