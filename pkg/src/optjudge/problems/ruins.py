"""Ancient Ruins: unbounded packing of axis-aligned rectangles into a W x H
grid container where some interior grid lines are forbidden, i.e. may not
pass through the interior of any placed item (touching them is fine).
Every size w x h with 1 <= w <= W, 1 <= h <= H is available in unlimited
copies and carries a non-negative value; maximize the packed value.

Instance text (whitespace-separated integers):
    W H
    k y1 ... yk        forbidden horizontal lines, 0 < y < H
    m x1 ... xm        forbidden vertical lines, 0 < x < W
    H rows of W values; row h (1-based) lists v[1][h] ... v[W][h],
    where v[w][h] is the value of one w x h item

Solution text:
    k
    k lines "x y w h"  lower-left corner (x, y), footprint [x,x+w) x [y,y+h)

All coordinates are 0-based from the container's lower-left corner.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache

from ..errors import TooLargeError
from ..verdicts import Verdict, accepted, constraint_violation, format_error
from .textio import SolutionFormatError, TokenReader

ORACLE_CELL_LIMIT = 16


@dataclass(frozen=True)
class RuinsInstance:
    width: int
    height: int
    h_lines: frozenset[int]
    v_lines: frozenset[int]
    values: tuple[tuple[int, ...], ...]  # values[h-1][w-1] = value of a w x h item

    def value(self, w: int, h: int) -> int:
        return self.values[h - 1][w - 1]


def parse_instance(text: bytes | str) -> RuinsInstance:
    """Parse an instance the judge generated itself (trusted input)."""
    reader = TokenReader(text)
    width = reader.take_int("W", lo=1)
    height = reader.take_int("H", lo=1)
    k = reader.take_int("k", lo=0)
    h_lines = frozenset(reader.take_int("y", lo=1, hi=height - 1) for _ in range(k))
    m = reader.take_int("m", lo=0)
    v_lines = frozenset(reader.take_int("x", lo=1, hi=width - 1) for _ in range(m))
    values = tuple(
        tuple(reader.take_int("v", lo=0) for _ in range(width)) for _ in range(height)
    )
    reader.expect_end()
    return RuinsInstance(width, height, h_lines, v_lines, values)


def _line_inside(lines: frozenset[int], low: int, high: int) -> int | None:
    """Smallest forbidden coordinate strictly between low and high, if any."""
    hits = [c for c in lines if low < c < high]
    return min(hits) if hits else None


def judge_ruins(instance_text: bytes | str, solution_text: bytes | str) -> Verdict:
    instance = parse_instance(instance_text)
    try:
        reader = TokenReader(solution_text)
        count = reader.take_int("placement count", lo=0)
        placements = [
            (
                reader.take_int("x"),
                reader.take_int("y"),
                reader.take_int("w"),
                reader.take_int("h"),
            )
            for _ in range(count)
        ]
        reader.expect_end()
    except SolutionFormatError as exc:
        return format_error(str(exc))

    owner = [-1] * (instance.width * instance.height)
    total = 0
    for idx, (x, y, w, h) in enumerate(placements):
        if w < 1 or h < 1:
            return constraint_violation(f"placement {idx} has non-positive size {w}x{h}")
        if x < 0 or y < 0 or x + w > instance.width or y + h > instance.height:
            return constraint_violation(f"placement {idx} out of bounds")
        y_hit = _line_inside(instance.h_lines, y, y + h)
        if y_hit is not None:
            return constraint_violation(f"horizontal line {y_hit} inside placement {idx}")
        x_hit = _line_inside(instance.v_lines, x, x + w)
        if x_hit is not None:
            return constraint_violation(f"vertical line {x_hit} inside placement {idx}")
        for yy in range(y, y + h):
            row = yy * instance.width
            for xx in range(x, x + w):
                if owner[row + xx] >= 0:
                    return constraint_violation(f"placements {owner[row + xx]},{idx} overlap")
                owner[row + xx] = idx
        total += instance.value(w, h)
    return accepted(total)


def _placement_options(instance: RuinsInstance) -> list[list[tuple[int, int, tuple[int, int, int, int]]]]:
    """Per anchor cell: every legal rectangle with its lower-left corner there,
    as (value, covered-cell bitmask, placement)."""
    W, H = instance.width, instance.height
    options: list[list[tuple[int, int, tuple[int, int, int, int]]]] = [[] for _ in range(W * H)]
    for y in range(H):
        for x in range(W):
            for h in range(1, H - y + 1):
                if _line_inside(instance.h_lines, y, y + h) is not None:
                    break  # taller rectangles from here contain the same line
                for w in range(1, W - x + 1):
                    if _line_inside(instance.v_lines, x, x + w) is not None:
                        break
                    mask = 0
                    for yy in range(y, y + h):
                        row = yy * W
                        for xx in range(x, x + w):
                            mask |= 1 << (row + xx)
                    options[y * W + x].append((instance.value(w, h), mask, (x, y, w, h)))
    return options


def oracle_ruins(instance: RuinsInstance) -> tuple[int, str]:
    """Exact optimum by exhaustive cell-by-cell placement search (memoized over
    covered-cell bitmasks); returns (optimum, witness solution text)."""
    cells = instance.width * instance.height
    if cells > ORACLE_CELL_LIMIT:
        raise TooLargeError(f"{instance.width}x{instance.height} exceeds {ORACLE_CELL_LIMIT} cells")
    full = (1 << cells) - 1
    options = _placement_options(instance)

    @lru_cache(maxsize=None)
    def best(mask: int) -> int:
        if mask == full:
            return 0
        free = full & ~mask
        low = free & -free
        cell = low.bit_length() - 1
        value = best(mask | low)  # leave this cell empty
        for v, rect_mask, _ in options[cell]:
            if rect_mask & mask == 0:
                value = max(value, v + best(mask | rect_mask))
        return value

    optimum = best(0)

    placements = []
    mask = 0
    while mask != full:
        free = full & ~mask
        low = free & -free
        cell = low.bit_length() - 1
        if best(mask) == best(mask | low):
            mask |= low
            continue
        for v, rect_mask, placement in options[cell]:
            if rect_mask & mask == 0 and best(mask) == v + best(mask | rect_mask):
                placements.append(placement)
                mask |= rect_mask
                break

    witness = f"{len(placements)}\n" + "".join(f"{x} {y} {w} {h}\n" for x, y, w, h in placements)
    return optimum, witness


def generate_ruins(seed: int, width: int, height: int, line_density: float = 0.0) -> str:
    """Deterministic random instance; values in [0, 100], each interior line
    coordinate forbidden with probability line_density."""
    if width < 1 or height < 1:
        raise ValueError("width and height must be >= 1")
    rng = random.Random(f"ruins:{seed}")
    h_lines = [y for y in range(1, height) if rng.random() < line_density]
    v_lines = [x for x in range(1, width) if rng.random() < line_density]
    rows = [[rng.randint(0, 100) for _ in range(width)] for _ in range(height)]
    out = [f"{width} {height}"]
    out.append(" ".join([str(len(h_lines))] + [str(y) for y in h_lines]))
    out.append(" ".join([str(len(v_lines))] + [str(x) for x in v_lines]))
    out.extend(" ".join(str(v) for v in row) for row in rows)
    return "\n".join(out) + "\n"
