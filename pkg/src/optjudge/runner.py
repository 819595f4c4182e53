"""Executes external solvers over instance suites under wall-clock limits.

Solver contract: the instance arrives on standard input, the solution is
read from standard output (capped at 64 MiB), standard error is discarded
unless a log path is given, and the whole process group is killed once the
per-instance limit elapses (1 s grace for kill delivery).
"""

from __future__ import annotations

import os
import signal
import subprocess
import threading
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Callable, Sequence

from .errors import SpawnError
from .manifest import ProblemManifest
from .scoring import EvaluationReport, InstanceResult, build_report
from .verdicts import (
    Verdict,
    format_error,
    judge_error,
    runtime_error,
    time_limit_exceeded,
)

DEFAULT_STDOUT_CAP = 64 * 1024 * 1024
KILL_GRACE_SECONDS = 1.0
_POLL_INTERVAL = 0.02

JudgeFn = Callable[[bytes, bytes], Verdict]


class RunStatus(Enum):
    COMPLETED = "completed"
    TIMED_OUT = "timed-out"
    CRASHED = "crashed"


@dataclass(frozen=True)
class RunOutcome:
    status: RunStatus
    exit_code: int | None
    stdout: bytes
    wall_time_seconds: float
    stdout_overflow: bool = False


def _kill_group(proc: subprocess.Popen) -> None:
    # start_new_session makes the child its own process-group leader.
    try:
        os.killpg(proc.pid, signal.SIGKILL)
    except (ProcessLookupError, PermissionError):
        try:
            proc.kill()
        except ProcessLookupError:
            pass
    try:
        proc.wait(timeout=KILL_GRACE_SECONDS)
    except subprocess.TimeoutExpired:
        proc.wait()  # SIGKILL cannot be ignored; this only waits out scheduler lag


def run_solver(
    command: Sequence[str],
    instance_bytes: bytes,
    limit_seconds: int,
    *,
    stderr_path: str | Path | None = None,
    stdout_cap: int = DEFAULT_STDOUT_CAP,
) -> RunOutcome:
    """Run one solver process over one instance under a wall-clock limit."""
    command = list(command)
    if not command:
        raise SpawnError("empty solver command")
    if limit_seconds < 1:
        raise ValueError("limit_seconds must be >= 1")

    stderr_file = open(stderr_path, "wb") if stderr_path is not None else None
    try:
        start = time.monotonic()
        try:
            proc = subprocess.Popen(
                command,
                stdin=subprocess.PIPE,
                stdout=subprocess.PIPE,
                stderr=stderr_file if stderr_file is not None else subprocess.DEVNULL,
                start_new_session=True,
            )
        except (FileNotFoundError, PermissionError, NotADirectoryError, OSError) as exc:
            raise SpawnError(f"cannot execute {command[0]!r}: {exc}") from exc

        overflow = threading.Event()
        chunks: list[bytes] = []

        def _pump_stdin() -> None:
            try:
                proc.stdin.write(instance_bytes)
                proc.stdin.close()
            except (BrokenPipeError, OSError):
                pass

        def _pump_stdout() -> None:
            total = 0
            stream = proc.stdout
            while True:
                try:
                    chunk = stream.read(65536)
                except (OSError, ValueError):
                    break
                if not chunk:
                    break
                if overflow.is_set():
                    continue  # keep draining so the solver is not blocked on a full pipe
                total += len(chunk)
                if total > stdout_cap:
                    overflow.set()
                    continue
                chunks.append(chunk)

        writer = threading.Thread(target=_pump_stdin, daemon=True)
        reader = threading.Thread(target=_pump_stdout, daemon=True)
        writer.start()
        reader.start()

        deadline = start + limit_seconds
        timed_out = False
        while True:
            if overflow.is_set():
                break
            remaining = deadline - time.monotonic()
            if remaining <= 0:
                timed_out = proc.poll() is None
                break
            try:
                proc.wait(timeout=min(_POLL_INTERVAL, remaining))
                break
            except subprocess.TimeoutExpired:
                continue

        if proc.poll() is None:
            _kill_group(proc)
        end = time.monotonic()

        reader.join(timeout=KILL_GRACE_SECONDS)
        writer.join(timeout=KILL_GRACE_SECONDS)
        for stream in (proc.stdout, proc.stdin):
            try:
                stream.close()
            except OSError:
                pass

        wall = end - start
        stdout = b"".join(chunks)
        if timed_out:
            status = RunStatus.TIMED_OUT
        elif proc.returncode == 0 and not overflow.is_set():
            status = RunStatus.COMPLETED
        else:
            status = RunStatus.CRASHED
        return RunOutcome(status, proc.returncode, stdout, wall, overflow.is_set())
    finally:
        if stderr_file is not None:
            stderr_file.close()


def _verdict_for_outcome(outcome: RunOutcome, judge: JudgeFn, instance_bytes: bytes, limit: int) -> Verdict:
    if outcome.stdout_overflow:
        return format_error("output too large")
    if outcome.status is RunStatus.TIMED_OUT:
        return time_limit_exceeded(f"no result within {limit} s")
    if outcome.status is RunStatus.CRASHED:
        return runtime_error(f"solver exited with code {outcome.exit_code}")
    try:
        return judge(instance_bytes, outcome.stdout)
    except Exception as exc:  # a judge must never raise; this is defense in depth
        return judge_error(f"judge raised {type(exc).__name__}: {exc}")


def evaluate_suite(
    problem: ProblemManifest,
    judge: JudgeFn,
    command: Sequence[str],
    parallelism: int = 1,
    visibility: str = "all",
    stderr_dir: str | Path | None = None,
) -> EvaluationReport:
    """Evaluate every selected instance exactly once; verdicts and aggregate are
    independent of parallelism."""
    if parallelism < 1:
        raise ValueError("parallelism must be >= 1")
    entries = problem.selected(visibility)
    if not entries:
        raise ValueError(f"no instances selected by visibility={visibility!r}")
    if stderr_dir is not None:
        stderr_dir = Path(stderr_dir)
        stderr_dir.mkdir(parents=True, exist_ok=True)

    def _evaluate_one(entry) -> InstanceResult:
        instance_bytes = problem.instance_path(entry.name).read_bytes()
        stderr_path = stderr_dir / f"{entry.name}.stderr.log" if stderr_dir is not None else None
        try:
            outcome = run_solver(
                command, instance_bytes, entry.time_limit_seconds, stderr_path=stderr_path
            )
        except SpawnError as exc:
            return InstanceResult(judge_error(str(exc)), 0.0)
        verdict = _verdict_for_outcome(outcome, judge, instance_bytes, entry.time_limit_seconds)
        return InstanceResult(verdict, outcome.wall_time_seconds)

    if parallelism == 1:
        results = [_evaluate_one(entry) for entry in entries]
    else:
        with ThreadPoolExecutor(max_workers=parallelism) as pool:
            results = list(pool.map(_evaluate_one, entries))

    per_instance = {entry.name: result for entry, result in zip(entries, results)}
    return build_report(problem.problem_id, per_instance, problem.direction)
