"""Aerial Firefighters: a deterministic fire burns across an N x M grid of
flammable resources and P planes drop water to contain it. Schedules are
scored by simulating T synchronous steps; the goal is to minimize burned
resources plus an extra penalty for every field burned to the ground.

Each step t runs three phases:
  1. drops scheduled at t land: the target cell's fire strength s drops by
     Wdrop (floored at 0), once per drop;
  2. burning: every cell with s > 0 loses s resources (floored at 0); a
     cell with no resources left has nothing to burn, so its s becomes 0;
  3. spreading: s grows by the number of the cell's von Neumann neighbors
     that are burning (post-phase-2 state); cells with r = 0 stay at s = 0.

Score: (sum of resources burned) + (sum of initial resources over cells
whose final r is 0). Lower is better.

Instance text:
    N M T P Wdrop C
    N rows of M initial resource values r
    N rows of M initial fire strengths s

Solution text:
    d
    d lines "t plane i j"   step t in [0, T), plane in [0, P), row i, col j

A plane needs C steps between consecutive drops (gap >= C).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from decimal import Decimal

import numpy as np

from ..errors import InvalidScheduleError, TooLargeError
from ..verdicts import Verdict, accepted, constraint_violation, format_error
from .textio import SolutionFormatError, TokenReader

ORACLE_CELL_LIMIT = 9
ORACLE_HORIZON_LIMIT = 4

Drop = tuple[int, int, int, int]  # (t, plane, i, j)


@dataclass(frozen=True)
class FireInstance:
    rows: int
    cols: int
    horizon: int
    planes: int
    w_drop: int
    turnaround: int
    r0: tuple[tuple[int, ...], ...]
    s0: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class FireScore:
    burned: int
    penalty: int
    total: int


def parse_instance(text: bytes | str) -> FireInstance:
    """Parse an instance the judge generated itself (trusted input)."""
    reader = TokenReader(text)
    rows = reader.take_int("N", lo=1)
    cols = reader.take_int("M", lo=1)
    horizon = reader.take_int("T", lo=1)
    planes = reader.take_int("P", lo=1)
    w_drop = reader.take_int("Wdrop", lo=1)
    turnaround = reader.take_int("C", lo=1)
    r0 = tuple(
        tuple(reader.take_int("r", lo=0) for _ in range(cols)) for _ in range(rows)
    )
    s0 = tuple(
        tuple(reader.take_int("s", lo=0) for _ in range(cols)) for _ in range(rows)
    )
    reader.expect_end()
    return FireInstance(rows, cols, horizon, planes, w_drop, turnaround, r0, s0)


def _validate_schedule(instance: FireInstance, drops: list[Drop]) -> None:
    for idx, (t, plane, i, j) in enumerate(drops):
        if not 0 <= t < instance.horizon:
            raise InvalidScheduleError(f"drop {idx} time {t} outside [0, {instance.horizon})")
        if not 0 <= plane < instance.planes:
            raise InvalidScheduleError(f"drop {idx} plane {plane} outside [0, {instance.planes})")
        if not (0 <= i < instance.rows and 0 <= j < instance.cols):
            raise InvalidScheduleError(f"drop {idx} cell ({i},{j}) outside grid")
    times_by_plane: dict[int, list[int]] = {}
    for t, plane, _, _ in drops:
        times_by_plane.setdefault(plane, []).append(t)
    for plane in sorted(times_by_plane):
        times = sorted(times_by_plane[plane])
        for prev, cur in zip(times, times[1:]):
            if cur - prev < instance.turnaround:
                raise InvalidScheduleError(
                    f"plane {plane} turnaround: drops at {prev} and {cur} "
                    f"need a gap of {instance.turnaround}"
                )


def simulate(instance: FireInstance, drops: list[Drop]) -> FireScore:
    """Run the three-phase simulation for T steps and score the final grid.

    Raises InvalidScheduleError naming the first violated schedule rule.
    """
    _validate_schedule(instance, drops)
    r = np.array(instance.r0, dtype=np.int64)
    s = np.array(instance.s0, dtype=np.int64)
    by_step: dict[int, list[tuple[int, int]]] = {}
    for t, _, i, j in drops:
        by_step.setdefault(t, []).append((i, j))

    for t in range(instance.horizon):
        for i, j in by_step.get(t, ()):
            s[i, j] = max(0, s[i, j] - instance.w_drop)
        burning = s > 0
        r = np.where(burning, np.maximum(r - s, 0), r)
        s = np.where(r == 0, 0, s)
        lit = (s > 0).astype(np.int64)
        grow = np.zeros_like(lit)
        grow[1:, :] += lit[:-1, :]
        grow[:-1, :] += lit[1:, :]
        grow[:, 1:] += lit[:, :-1]
        grow[:, :-1] += lit[:, 1:]
        s = np.where(r > 0, s + grow, 0)

    r0_arr = np.array(instance.r0, dtype=np.int64)
    burned = int((r0_arr - r).sum())
    penalty = int(r0_arr[r == 0].sum())
    return FireScore(burned, penalty, burned + penalty)


def judge_fire(instance_text: bytes | str, solution_text: bytes | str) -> Verdict:
    instance = parse_instance(instance_text)
    try:
        reader = TokenReader(solution_text)
        count = reader.take_int("drop count", lo=0)
        drops = [
            (
                reader.take_int("t"),
                reader.take_int("plane"),
                reader.take_int("i"),
                reader.take_int("j"),
            )
            for _ in range(count)
        ]
        reader.expect_end()
    except SolutionFormatError as exc:
        return format_error(str(exc))
    try:
        score = simulate(instance, drops)
    except InvalidScheduleError as exc:
        return constraint_violation(str(exc))
    return accepted(Decimal(score.total))


def _time_subsets(horizon: int, turnaround: int) -> list[tuple[int, ...]]:
    """All drop-time sets one plane can fly (ascending, gaps >= turnaround)."""
    subsets: list[tuple[int, ...]] = [()]
    def extend(prefix: tuple[int, ...], start: int) -> None:
        for t in range(start, horizon):
            chosen = prefix + (t,)
            subsets.append(chosen)
            extend(chosen, t + turnaround)
    extend((), 0)
    return subsets


def oracle_fire(instance: FireInstance) -> tuple[int, str]:
    """Exact best single-plane score by trying every feasible schedule:
    every admissible set of drop times crossed with every cell assignment."""
    cells = instance.rows * instance.cols
    if instance.planes != 1:
        raise TooLargeError(f"{instance.planes} planes exceeds oracle limit of 1")
    if instance.horizon > ORACLE_HORIZON_LIMIT:
        raise TooLargeError(f"horizon {instance.horizon} exceeds {ORACLE_HORIZON_LIMIT}")
    if cells > ORACLE_CELL_LIMIT:
        raise TooLargeError(f"{cells} cells exceeds {ORACLE_CELL_LIMIT}")

    coords = [(i, j) for i in range(instance.rows) for j in range(instance.cols)]
    best: int | None = None
    best_drops: list[Drop] = []
    for times in _time_subsets(instance.horizon, instance.turnaround):
        assignments: list[list[Drop]] = [[]]
        for t in times:
            assignments = [
                plan + [(t, 0, i, j)] for plan in assignments for i, j in coords
            ]
        for plan in assignments:
            total = simulate(instance, plan).total
            if best is None or total < best:
                best = total
                best_drops = plan

    witness = f"{len(best_drops)}\n" + "".join(
        f"{t} {p} {i} {j}\n" for t, p, i, j in best_drops
    )
    assert best is not None
    return best, witness


def generate_fire(seed: int, rows: int, cols: int, horizon: int, planes: int, ignition_count: int) -> str:
    """Deterministic random instance: resources uniform in [1, 9], the given
    number of distinct cells ignited at strength 1, Wdrop and C in [1, 3]."""
    if ignition_count > rows * cols:
        raise ValueError("ignition_count exceeds cell count")
    rng = random.Random(f"fire:{seed}")
    r0 = [[rng.randint(1, 9) for _ in range(cols)] for _ in range(rows)]
    lit = set(rng.sample(range(rows * cols), ignition_count))
    s0 = [[1 if i * cols + j in lit else 0 for j in range(cols)] for i in range(rows)]
    w_drop = rng.randint(1, 3)
    turnaround = rng.randint(1, 3)
    lines = [f"{rows} {cols} {horizon} {planes} {w_drop} {turnaround}"]
    lines += [" ".join(str(v) for v in row) for row in r0]
    lines += [" ".join(str(v) for v in row) for row in s0]
    return "\n".join(lines) + "\n"
