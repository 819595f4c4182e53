"""Painting Artist: unbounded packing of irregular grid-shaped items onto a
colored W x H grid. Each placed copy must cover cells of a single color
(different copies may use different colors); copies of every item are
unlimited; maximize the total value of placed copies. Shapes are used
exactly as given: no rotation or reflection.

Instance text:
    W H C n
    H rows of W color ids in 1..C (row y = 0 first)
    per item: "v w h" followed by h rows of w characters over {#, .},
    where '#' marks a cell of the shape (row dy = 0 first)

Solution text:
    k
    k lines "item x y"  0-based item index; the shape cell (dx, dy) covers
    grid cell (x+dx, y+dy), indexed (column, row)
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache

from ..errors import TooLargeError
from ..verdicts import Verdict, accepted, constraint_violation, format_error
from .textio import SolutionFormatError, TokenReader

ORACLE_CELL_LIMIT = 16
ORACLE_ITEM_LIMIT = 4


@dataclass(frozen=True)
class PaintItem:
    value: int
    width: int
    height: int
    cells: frozenset[tuple[int, int]]  # (dx, dy) offsets within the bounding box


@dataclass(frozen=True)
class PaintInstance:
    width: int
    height: int
    color_count: int
    colors: tuple[tuple[int, ...], ...]  # colors[y][x]
    items: tuple[PaintItem, ...]

    def color(self, x: int, y: int) -> int:
        return self.colors[y][x]


def _parse_shape_row(reader: TokenReader, width: int) -> bytes:
    token = reader.take_word("shape row")
    if len(token) != width or any(c not in b"#." for c in token):
        raise SolutionFormatError(f"shape row must be {width} characters over #/.")
    return token


def parse_instance(text: bytes | str) -> PaintInstance:
    """Parse an instance the judge generated itself (trusted input)."""
    reader = TokenReader(text)
    width = reader.take_int("W", lo=1)
    height = reader.take_int("H", lo=1)
    color_count = reader.take_int("C", lo=1)
    item_count = reader.take_int("n", lo=1)
    colors = tuple(
        tuple(reader.take_int("color", lo=1, hi=color_count) for _ in range(width))
        for _ in range(height)
    )
    items = []
    for _ in range(item_count):
        value = reader.take_int("v", lo=0)
        w = reader.take_int("w", lo=1)
        h = reader.take_int("h", lo=1)
        cells = set()
        for dy in range(h):
            row = _parse_shape_row(reader, w)
            cells.update((dx, dy) for dx in range(w) if row[dx] == ord("#"))
        if not cells:
            raise SolutionFormatError("empty item shape")
        items.append(PaintItem(value, w, h, frozenset(cells)))
    reader.expect_end()
    return PaintInstance(width, height, color_count, colors, tuple(items))


def judge_paint(instance_text: bytes | str, solution_text: bytes | str) -> Verdict:
    instance = parse_instance(instance_text)
    try:
        reader = TokenReader(solution_text)
        count = reader.take_int("placement count", lo=0)
        placements = [
            (reader.take_int("item"), reader.take_int("x"), reader.take_int("y"))
            for _ in range(count)
        ]
        reader.expect_end()
    except SolutionFormatError as exc:
        return format_error(str(exc))

    owner = [-1] * (instance.width * instance.height)
    total = 0
    for idx, (item_idx, x, y) in enumerate(placements):
        if not 0 <= item_idx < len(instance.items):
            return constraint_violation(f"placement {idx} references unknown item {item_idx}")
        item = instance.items[item_idx]
        covered = []
        for dx, dy in sorted(item.cells):
            ax, ay = x + dx, y + dy
            if not (0 <= ax < instance.width and 0 <= ay < instance.height):
                return constraint_violation(f"placement {idx} out of bounds")
            covered.append((ax, ay))
        for ax, ay in covered:
            cell = ay * instance.width + ax
            if owner[cell] >= 0:
                return constraint_violation(f"placements {owner[cell]},{idx} overlap")
            owner[cell] = idx
        shades = sorted({instance.color(ax, ay) for ax, ay in covered})
        if len(shades) > 1:
            return constraint_violation(
                f"placement {idx} spans colors {','.join(str(c) for c in shades)}"
            )
        total += item.value
    return accepted(total)


def _placement_options(instance: PaintInstance) -> list[list[tuple[int, int, tuple[int, int, int]]]]:
    """Per grid cell: every single-color in-grid placement covering that cell,
    as (value, covered-cell bitmask, (item, x, y))."""
    W, H = instance.width, instance.height
    options: list[list[tuple[int, int, tuple[int, int, int]]]] = [[] for _ in range(W * H)]
    for item_idx, item in enumerate(instance.items):
        offsets = sorted(item.cells)
        for y in range(H - item.height + 1):
            for x in range(W - item.width + 1):
                covered = [(x + dx, y + dy) for dx, dy in offsets]
                if len({instance.color(ax, ay) for ax, ay in covered}) > 1:
                    continue
                mask = 0
                for ax, ay in covered:
                    mask |= 1 << (ay * W + ax)
                entry = (item.value, mask, (item_idx, x, y))
                for ax, ay in covered:
                    options[ay * W + ax].append(entry)
    return options


def oracle_paint(instance: PaintInstance) -> tuple[int, str]:
    """Exact optimum by cell-by-cell backtracking over (place-covering-copy |
    leave-empty) choices, memoized over consumed-cell bitmasks."""
    cells = instance.width * instance.height
    if cells > ORACLE_CELL_LIMIT:
        raise TooLargeError(f"{instance.width}x{instance.height} exceeds {ORACLE_CELL_LIMIT} cells")
    if len(instance.items) > ORACLE_ITEM_LIMIT:
        raise TooLargeError(f"{len(instance.items)} items exceeds {ORACLE_ITEM_LIMIT}")
    full = (1 << cells) - 1
    options = _placement_options(instance)

    @lru_cache(maxsize=None)
    def best(mask: int) -> int:
        if mask == full:
            return 0
        free = full & ~mask
        low = free & -free
        cell = low.bit_length() - 1
        value = best(mask | low)
        for v, cover, _ in options[cell]:
            if cover & mask == 0:
                value = max(value, v + best(mask | cover))
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
        for v, cover, placement in options[cell]:
            if cover & mask == 0 and best(mask) == v + best(mask | cover):
                placements.append(placement)
                mask |= cover
                break

    witness = f"{len(placements)}\n" + "".join(f"{i} {x} {y}\n" for i, x, y in placements)
    return optimum, witness


def _random_polyomino(rng: random.Random, size: int) -> frozenset[tuple[int, int]]:
    cells = {(0, 0)}
    while len(cells) < size:
        frontier = sorted(
            (cx + dx, cy + dy)
            for cx, cy in cells
            for dx, dy in ((1, 0), (-1, 0), (0, 1), (0, -1))
            if (cx + dx, cy + dy) not in cells
        )
        cells.add(rng.choice(frontier))
    min_x = min(x for x, _ in cells)
    min_y = min(y for _, y in cells)
    return frozenset((x - min_x, y - min_y) for x, y in cells)


def generate_paint(seed: int, width: int, height: int, colors: int, items: int) -> str:
    """Deterministic random instance; connected 1-5 cell shapes, values in [1, 50]."""
    if colors < 1 or items < 1:
        raise ValueError("colors and items must be >= 1")
    rng = random.Random(f"paint:{seed}")
    grid = [[rng.randint(1, colors) for _ in range(width)] for _ in range(height)]
    out = [f"{width} {height} {colors} {items}"]
    out.extend(" ".join(str(c) for c in row) for row in grid)
    for _ in range(items):
        cells = _random_polyomino(rng, rng.randint(1, 5))
        w = max(x for x, _ in cells) + 1
        h = max(y for _, y in cells) + 1
        out.append(f"{rng.randint(1, 50)} {w} {h}")
        for dy in range(h):
            out.append("".join("#" if (dx, dy) in cells else "." for dx in range(w)))
    return "\n".join(out) + "\n"
