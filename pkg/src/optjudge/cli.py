"""Command-line front door.

Subcommands:
    generate   write a seeded instance suite (files + problem.toml)
    judge      score one solution file against one instance file
    evaluate   run a solver over a suite and print per-instance verdicts
    submit     throttled evaluate-and-record against the submission store
    board      print the leaderboard for a problem
    verify     audit a suite's instance count and time budget

Exit-code policy: solution failures (wrong output, constraint violations,
timeouts) are data and exit 0; harness failures (bad manifest, unknown
problem, unspawnable solver, corrupt store, throttled submit) are errors
and exit nonzero.
"""

from __future__ import annotations

import argparse
import os
import shlex
import shutil
import sys
import time
from pathlib import Path

from .errors import HarnessError
from .manifest import (
    InstanceEntry,
    ProblemManifest,
    Visibility,
    load_manifest,
    split_budget,
    write_manifest,
)
from .registry import get_problem
from .runner import evaluate_suite
from .scoring import render_report_lines
from .store import (
    SubmissionRecord,
    check_throttle,
    leaderboard,
    load_records,
    record_submission,
)

STORE_ENV_VAR = "OPTJUDGE_STORE"
DEFAULT_STORE = "submissions.log"
MANIFEST_NAME = "problem.toml"


def _suite_dir(args: argparse.Namespace) -> Path:
    if args.suite is not None:
        return Path(args.suite)
    return Path("problems") / args.problem_id


def _store_path(args: argparse.Namespace) -> Path:
    if args.store is not None:
        return Path(args.store)
    return Path(os.environ.get(STORE_ENV_VAR, DEFAULT_STORE))


def _solver_command(text: str) -> list[str]:
    command = shlex.split(text)
    if not command:
        raise HarnessError("solver command is empty")
    head = command[0]
    if os.sep in head:
        runnable = os.path.isfile(head) and os.access(head, os.X_OK)
    else:
        runnable = shutil.which(head) is not None
    if not runnable:
        raise HarnessError(f"solver command not runnable: {head!r}")
    return command


def _parse_param(text: str) -> tuple[str, int | float | str]:
    key, sep, raw = text.partition("=")
    if not sep or not key:
        raise HarnessError(f"parameter {text!r} must look like key=value")
    for caster in (int, float):
        try:
            return key, caster(raw)
        except ValueError:
            continue
    return key, raw


def cmd_generate(args: argparse.Namespace) -> int:
    problem = get_problem(args.problem_id)
    params = dict(problem.default_params)
    for item in args.param or []:
        key, value = _parse_param(item)
        if key not in params:
            known = ", ".join(sorted(params))
            raise HarnessError(f"unknown parameter {key!r} for {args.problem_id} (known: {known})")
        params[key] = value

    if args.total_time is not None:
        limits = split_budget(args.total_time, args.count)
    else:
        limits = [args.time_limit] * args.count
    private_count = int(args.count * args.private + 0.5)
    if not 0 <= private_count <= args.count:
        raise HarnessError(f"--private {args.private} is out of range")

    out_dir = _suite_dir(args)
    instances_dir = out_dir / "instances"
    instances_dir.mkdir(parents=True, exist_ok=True)

    entries = []
    for idx in range(args.count):
        name = f"i{idx:03d}.in"
        text = problem.generate(seed=args.seed + idx, **params)
        (instances_dir / name).write_text(text, encoding="utf-8")
        visibility = Visibility.PRIVATE if idx >= args.count - private_count else Visibility.PUBLIC
        entries.append(InstanceEntry(name, visibility, limits[idx]))

    (out_dir / "description.md").write_text(problem.description_text(), encoding="utf-8")
    manifest = ProblemManifest(
        problem_id=args.problem_id,
        direction=problem.direction,
        instances=entries,
        frequency_minutes=args.frequency,
        description_path="description.md",
        declared_instances=args.count,
        declared_total_seconds=sum(limits),
    )
    write_manifest(manifest, out_dir / MANIFEST_NAME)
    print(f"wrote {args.count} instances ({private_count} private) to {out_dir}")
    return 0


def cmd_judge(args: argparse.Namespace) -> int:
    problem = get_problem(args.problem_id)
    try:
        instance_bytes = Path(args.instance).read_bytes()
        solution_bytes = Path(args.solution).read_bytes()
    except OSError as exc:
        raise HarnessError(str(exc)) from exc
    verdict = problem.judge(instance_bytes, solution_bytes)
    score = str(verdict.score) if verdict.score is not None else "-"
    print(f"{Path(args.instance).name}\t{verdict.kind.value}\t{score}\t{verdict.message}")
    return 0


def cmd_evaluate(args: argparse.Namespace) -> int:
    problem = get_problem(args.problem_id)
    manifest = load_manifest(_suite_dir(args) / MANIFEST_NAME)
    command = _solver_command(args.command)
    report = evaluate_suite(
        manifest,
        problem.judge,
        command,
        parallelism=args.parallelism,
        visibility=args.visibility,
        stderr_dir=args.stderr_dir,
    )
    for line in render_report_lines(report):
        print(line)
    return 0


def cmd_submit(args: argparse.Namespace) -> int:
    problem = get_problem(args.problem_id)
    manifest = load_manifest(_suite_dir(args) / MANIFEST_NAME)
    command = _solver_command(args.command)
    store = _store_path(args)
    records = load_records(store)
    now = args.now if args.now is not None else int(time.time())

    decision = check_throttle(args.user, manifest, now, records)
    if not decision.allowed:
        print(f"blocked: retry after {decision.retry_after_seconds} s")
        return 1

    report = evaluate_suite(
        manifest, problem.judge, command, parallelism=args.parallelism, visibility="all"
    )
    record_submission(SubmissionRecord(args.user, args.problem_id, now, report), store)
    for line in render_report_lines(report):
        print(line)
    print(f"recorded\t{args.user}\t{now}")
    return 0


def cmd_board(args: argparse.Namespace) -> int:
    get_problem(args.problem_id)
    manifest = load_manifest(_suite_dir(args) / MANIFEST_NAME)
    records = load_records(_store_path(args))
    for rank, row in enumerate(leaderboard(manifest, records), start=1):
        print(f"{rank}\t{row.user}\t{row.best}\t{row.submitted_at}")
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    get_problem(args.problem_id)
    manifest = load_manifest(_suite_dir(args) / MANIFEST_NAME)
    failed = False

    def check(label: str, actual: int, declared: int | None, unit: str) -> None:
        nonlocal failed
        if declared is None:
            print(f"{label} {actual}: no declared target")
            failed = True
        elif actual == declared:
            print(f"{label} {actual} == declared {declared}: ok")
        else:
            gap = declared - actual
            word = "deficit" if gap > 0 else "surplus"
            print(f"{label} {actual} != declared {declared}: {word} {abs(gap)} {unit}")
            failed = True

    check("instances", len(manifest.instances), manifest.declared_instances, "")
    check("total seconds", manifest.total_time_seconds(), manifest.declared_total_seconds, "s")
    print(f"frequency {manifest.frequency_minutes} min")
    print(f"verify: {'FAIL' if failed else 'ok'}")
    return 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="optjudge",
        description="Instance suites, solution judging, throttled submissions, leaderboards.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, handler, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("problem_id", help="problem identifier, e.g. ruins")
        p.set_defaults(func=handler)
        return p

    p = add("generate", cmd_generate, "write a seeded instance suite")
    p.add_argument("--out", dest="suite", default=None, help="suite directory (default problems/<id>)")
    p.add_argument("--seed", type=int, default=1, help="base seed; instance k uses seed+k")
    p.add_argument("--count", type=int, default=10, help="number of instances")
    p.add_argument("--private", type=float, default=0.0, help="fraction of instances marked private (the last ones)")
    p.add_argument("--frequency", type=int, default=0, help="submission frequency in minutes (0 = unthrottled)")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--time-limit", type=int, default=30, help="per-instance limit in seconds")
    group.add_argument("--total-time", type=int, default=None, help="total budget in seconds, split over instances")
    p.add_argument("-p", "--param", action="append", metavar="KEY=VALUE", help="override a generator parameter")

    p = add("judge", cmd_judge, "judge one solution file")
    p.add_argument("--instance", required=True, help="instance file")
    p.add_argument("--solution", required=True, help="solution file")

    p = add("evaluate", cmd_evaluate, "run a solver over a suite")
    p.add_argument("--suite", default=None, help="suite directory (default problems/<id>)")
    p.add_argument("--command", required=True, help="solver command line (runs once per instance)")
    p.add_argument("--parallelism", type=int, default=1, help="instances evaluated concurrently")
    p.add_argument("--visibility", choices=["all", "public"], default="all", help="which instances to run")
    p.add_argument("--stderr-dir", default=None, help="directory for per-instance solver stderr logs")

    p = add("submit", cmd_submit, "evaluate and record a submission")
    p.add_argument("--suite", default=None, help="suite directory (default problems/<id>)")
    p.add_argument("--user", required=True, help="submitting user name")
    p.add_argument("--command", required=True, help="solver command line")
    p.add_argument("--parallelism", type=int, default=1, help="instances evaluated concurrently")
    p.add_argument("--store", default=None, help=f"submission store path (default ${STORE_ENV_VAR} or {DEFAULT_STORE})")
    p.add_argument("--now", type=int, default=None, help="submission timestamp override (epoch seconds)")

    p = add("board", cmd_board, "print the leaderboard")
    p.add_argument("--suite", default=None, help="suite directory (default problems/<id>)")
    p.add_argument("--store", default=None, help=f"submission store path (default ${STORE_ENV_VAR} or {DEFAULT_STORE})")

    p = add("verify", cmd_verify, "audit suite count and budget against declared targets")
    p.add_argument("--suite", default=None, help="suite directory (default problems/<id>)")

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except HarnessError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
