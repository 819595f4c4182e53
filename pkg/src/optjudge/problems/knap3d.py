"""3D Knapsack: pack axis-aligned boxes into a W x H x D container, each
item usable at most once, rotations by axis permutation allowed; maximize
the total value of packed items.

Instance text:
    W H D n
    n item lines "w h d v"

Solution text:
    k
    k lines "item x y z orient"   0-based item index, integer anchor
                                  (lowest corner), orientation 0..5

The orientation is the lexicographic rank of the permutation applied to
the item dimensions (w, h, d):

    0: (w, h, d)    1: (w, d, h)    2: (h, w, d)
    3: (h, d, w)    4: (d, w, h)    5: (d, h, w)

The oriented box occupies [x, x+w') x [y, y+h') x [z, z+d') and must lie
inside the container; boxes may touch but not share interior volume.

Instances from external benchmark collections can be used by rewriting
them into this text format; the judge needs nothing else.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from decimal import Decimal

from ..errors import TooLargeError
from ..verdicts import Verdict, accepted, constraint_violation, format_error
from .textio import SolutionFormatError, TokenReader

ORIENTATIONS: tuple[tuple[int, int, int], ...] = tuple(itertools.permutations((0, 1, 2)))
ORACLE_ITEM_LIMIT = 3
ORACLE_VOLUME_LIMIT = 27

Box = tuple[int, int, int]


@dataclass(frozen=True)
class Knap3dItem:
    dims: Box
    value: int


@dataclass(frozen=True)
class Knap3dInstance:
    width: int
    height: int
    depth: int
    items: tuple[Knap3dItem, ...]


def oriented_dims(dims: Box, orient: int) -> Box:
    p = ORIENTATIONS[orient]
    return dims[p[0]], dims[p[1]], dims[p[2]]


def parse_instance(text: bytes | str) -> Knap3dInstance:
    """Parse an instance the judge generated itself (trusted input)."""
    reader = TokenReader(text)
    width = reader.take_int("W", lo=1)
    height = reader.take_int("H", lo=1)
    depth = reader.take_int("D", lo=1)
    n = reader.take_int("n", lo=1)
    items = tuple(
        Knap3dItem(
            (
                reader.take_int("w", lo=1),
                reader.take_int("h", lo=1),
                reader.take_int("d", lo=1),
            ),
            reader.take_int("v", lo=0),
        )
        for _ in range(n)
    )
    reader.expect_end()
    return Knap3dInstance(width, height, depth, items)


def judge_knap3d(instance_text: bytes | str, solution_text: bytes | str) -> Verdict:
    instance = parse_instance(instance_text)
    try:
        reader = TokenReader(solution_text)
        count = reader.take_int("placement count", lo=0)
        placements = [
            (
                reader.take_int("item"),
                reader.take_int("x"),
                reader.take_int("y"),
                reader.take_int("z"),
                reader.take_int("orient", lo=0, hi=5),
            )
            for _ in range(count)
        ]
        reader.expect_end()
    except SolutionFormatError as exc:
        return format_error(str(exc))

    used: dict[int, int] = {}
    boxes: list[tuple[int, int, int, int, int, int]] = []  # (x, y, z, ow, oh, od)
    total = 0
    for idx, (item_idx, x, y, z, orient) in enumerate(placements):
        if not 0 <= item_idx < len(instance.items):
            return constraint_violation(f"placement {idx} references unknown item {item_idx}")
        if item_idx in used:
            return constraint_violation(f"placement {idx} reuses item {item_idx}")
        item = instance.items[item_idx]
        ow, oh, od = oriented_dims(item.dims, orient)
        if not (
            0 <= x and x + ow <= instance.width
            and 0 <= y and y + oh <= instance.height
            and 0 <= z and z + od <= instance.depth
        ):
            return constraint_violation(f"placement {idx} out of bounds")
        for j, (bx, by, bz, bw, bh, bd) in enumerate(boxes):
            if (
                x < bx + bw and bx < x + ow
                and y < by + bh and by < y + oh
                and z < bz + bd and bz < z + od
            ):
                return constraint_violation(f"placements {j},{idx} overlap")
        used[item_idx] = idx
        boxes.append((x, y, z, ow, oh, od))
        total += item.value
    return accepted(Decimal(total))


def oracle_knap3d(instance: Knap3dInstance) -> tuple[int, str]:
    """Exact optimum by depth-first search over items: skip each item or
    place it in any distinct orientation at any anchor whose covered cells
    (tracked as a bitmask) are still free."""
    W, H, D = instance.width, instance.height, instance.depth
    if len(instance.items) > ORACLE_ITEM_LIMIT:
        raise TooLargeError(f"{len(instance.items)} items exceeds {ORACLE_ITEM_LIMIT}")
    if W * H * D > ORACLE_VOLUME_LIMIT:
        raise TooLargeError(f"container volume {W * H * D} exceeds {ORACLE_VOLUME_LIMIT}")

    def cell_bit(x: int, y: int, z: int) -> int:
        return 1 << ((z * H + y) * W + x)

    # one representative orientation index per distinct oriented shape
    options_per_item: list[list[tuple[int, int, int, int, int]]] = []
    for item in instance.items:
        shapes: dict[Box, int] = {}
        for orient in range(6):
            shapes.setdefault(oriented_dims(item.dims, orient), orient)
        options = []
        for (ow, oh, od), orient in shapes.items():
            for x in range(W - ow + 1):
                for y in range(H - oh + 1):
                    for z in range(D - od + 1):
                        mask = 0
                        for cz in range(z, z + od):
                            for cy in range(y, y + oh):
                                for cx in range(x, x + ow):
                                    mask |= cell_bit(cx, cy, cz)
                        options.append((mask, x, y, z, orient))
        options_per_item.append(options)

    values = [item.value for item in instance.items]
    suffix = [0] * (len(values) + 1)
    for i in range(len(values) - 1, -1, -1):
        suffix[i] = suffix[i + 1] + values[i]

    best_value = 0
    best_plan: list[tuple[int, int, int, int, int]] = []
    plan: list[tuple[int, int, int, int, int]] = []

    def search(i: int, occupied: int, value: int) -> None:
        nonlocal best_value, best_plan
        if value > best_value:
            best_value = value
            best_plan = list(plan)
        if i == len(values) or value + suffix[i] <= best_value:
            return
        for mask, x, y, z, orient in options_per_item[i]:
            if mask & occupied == 0:
                plan.append((i, x, y, z, orient))
                search(i + 1, occupied | mask, value + values[i])
                plan.pop()
        search(i + 1, occupied, value)

    search(0, 0, 0)
    witness = f"{len(best_plan)}\n" + "".join(
        f"{i} {x} {y} {z} {o}\n" for i, x, y, z, o in best_plan
    )
    return best_value, witness


def generate_knap3d(seed: int, width: int, height: int, depth: int, n: int) -> str:
    """Deterministic random instance: each item dimension uniform in
    [1, max container side], values uniform in [1, 100]."""
    if n < 1:
        raise ValueError("n must be >= 1")
    rng = random.Random(f"knap3d:{seed}")
    side = max(width, height, depth)
    lines = [f"{width} {height} {depth} {n}"]
    for _ in range(n):
        w, h, d = (rng.randint(1, side) for _ in range(3))
        lines.append(f"{w} {h} {d} {rng.randint(1, 100)}")
    return "\n".join(lines) + "\n"
