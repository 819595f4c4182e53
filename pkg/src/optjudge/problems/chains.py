"""Short Chains: connect n terminal points in the plane with straight
segments of minimum total length. Up to n - 2 extra Steiner points may be
added as junctions to shorten the tree. A Steiner point must not lie inside
any of the m forbidden circles (all sharing radius R); segments themselves
may cross circles freely.

Instance text:
    n m R
    n terminal lines "x y"
    m circle-center lines "cx cy"

Solution text:
    s                 number of Steiner points, s <= n - 2
    s lines "x y"
    e                 number of segments
    e lines "a b"     0-based node indices: terminals 0..n-1, then
                      Steiner points n..n+s-1

Every listed segment is scored once, so cycles and duplicates only add
length. A Steiner point is rejected when its distance to some circle
center falls below R - 1e-6; the small slack keeps boundary placements
stable under floating point.
"""

from __future__ import annotations

import heapq
import itertools
import math
import random
from dataclasses import dataclass
from decimal import Decimal
from functools import lru_cache

from ..errors import TooLargeError
from ..verdicts import Verdict, accepted, constraint_violation, format_error
from .textio import SolutionFormatError, TokenReader

BOUNDARY_TOLERANCE = 1e-6
ORACLE_TERMINAL_LIMIT = 5
_MAX_SWEEPS = 160
_INNER_STEPS = 8

Point = tuple[float, float]


@dataclass(frozen=True)
class ChainsInstance:
    terminals: tuple[Point, ...]
    circles: tuple[Point, ...]
    radius: float


def parse_instance(text: bytes | str) -> ChainsInstance:
    """Parse an instance the judge generated itself (trusted input)."""
    reader = TokenReader(text)
    n = reader.take_int("n", lo=2)
    m = reader.take_int("m", lo=0)
    radius = reader.take_float("R")
    if radius < 0:
        raise SolutionFormatError("R must be >= 0")
    terminals = tuple((reader.take_float("x"), reader.take_float("y")) for _ in range(n))
    circles = tuple((reader.take_float("cx"), reader.take_float("cy")) for _ in range(m))
    reader.expect_end()
    return ChainsInstance(terminals, circles, radius)


def judge_chains(instance_text: bytes | str, solution_text: bytes | str) -> Verdict:
    instance = parse_instance(instance_text)
    n = len(instance.terminals)
    try:
        reader = TokenReader(solution_text)
        s = reader.take_int("steiner count", lo=0)
        steiner = [(reader.take_float("x"), reader.take_float("y")) for _ in range(s)]
        e = reader.take_int("edge count", lo=0)
        edges = [(reader.take_int("a"), reader.take_int("b")) for _ in range(e)]
        reader.expect_end()
    except SolutionFormatError as exc:
        return format_error(str(exc))

    if s > n - 2:
        return constraint_violation(f"steiner count {s} exceeds limit {n - 2}")
    for i, (px, py) in enumerate(steiner):
        for j, (cx, cy) in enumerate(instance.circles):
            if math.hypot(px - cx, py - cy) < instance.radius - BOUNDARY_TOLERANCE:
                return constraint_violation(f"steiner {i} inside circle {j}")

    node_count = n + s
    points = list(instance.terminals) + steiner
    parent = list(range(node_count))

    def find(v: int) -> int:
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    total = 0.0
    for idx, (a, b) in enumerate(edges):
        for endpoint in (a, b):
            if not 0 <= endpoint < node_count:
                return constraint_violation(f"edge {idx} references unknown node {endpoint}")
        if a == b:
            return constraint_violation(f"edge {idx} is a self-loop")
        parent[find(a)] = find(b)
        total += math.hypot(points[a][0] - points[b][0], points[a][1] - points[b][1])

    root = find(0)
    for t in range(1, n):
        if find(t) != root:
            return constraint_violation(f"terminal {t} not connected")
    return accepted(Decimal(f"{total:.9f}"))


def _mst(points: tuple[Point, ...]) -> tuple[float, list[tuple[int, int]]]:
    """Prim's algorithm; returns (length, edge list) over point indices."""
    n = len(points)
    in_tree = [False] * n
    best_dist = [math.inf] * n
    best_from = [0] * n
    best_dist[0] = 0.0
    total = 0.0
    edges: list[tuple[int, int]] = []
    for _ in range(n):
        v = min((i for i in range(n) if not in_tree[i]), key=best_dist.__getitem__)
        in_tree[v] = True
        total += best_dist[v]
        if v != 0:
            edges.append((best_from[v], v))
        vx, vy = points[v]
        for u in range(n):
            if not in_tree[u]:
                d = math.hypot(points[u][0] - vx, points[u][1] - vy)
                if d < best_dist[u]:
                    best_dist[u] = d
                    best_from[u] = v
    return total, edges


def _prufer_to_edges(seq: tuple[int, ...], m: int) -> tuple[tuple[int, int], ...]:
    remaining = [0] * m
    for v in seq:
        remaining[v] += 1
    heap = [i for i in range(m) if remaining[i] == 0]
    heapq.heapify(heap)
    edges = []
    for v in seq:
        leaf = heapq.heappop(heap)
        edges.append((min(leaf, v), max(leaf, v)))
        remaining[v] -= 1
        if remaining[v] == 0:
            heapq.heappush(heap, v)
    a = heapq.heappop(heap)
    b = heapq.heappop(heap)
    edges.append((min(a, b), max(a, b)))
    return tuple(sorted(edges))


@lru_cache(maxsize=None)
def _topologies(n: int, s: int) -> tuple[tuple[tuple[int, int], ...], ...]:
    """All trees on n terminals plus s Steiner nodes where every Steiner node
    has degree >= 3, deduplicated up to relabeling of the Steiner nodes."""
    m = n + s
    steiner_labels = range(n, m)
    relabelings = []
    for perm in itertools.permutations(steiner_labels):
        mapping = list(range(m))
        for offset, target in enumerate(perm):
            mapping[n + offset] = target
        relabelings.append(mapping)

    seen = set()
    result = []
    for seq in itertools.product(range(m), repeat=m - 2):
        if any(seq.count(v) < 2 for v in steiner_labels):
            continue  # degree = appearances + 1, so a junction needs >= 2
        edges = _prufer_to_edges(seq, m)
        key = min(
            tuple(sorted((min(mp[a], mp[b]), max(mp[a], mp[b])) for a, b in edges))
            for mp in relabelings
        )
        if key not in seen:
            seen.add(key)
            result.append(edges)
    return tuple(result)


def _project(x: float, y: float, circles: tuple[Point, ...], radius: float) -> Point:
    """Push a point out of every circle it sits strictly inside of."""
    if radius <= 0 or not circles:
        return x, y
    for _ in range(64):
        moved = False
        for cx, cy in circles:
            d = math.hypot(x - cx, y - cy)
            if d >= radius:
                continue
            if d < 1e-12:
                x, y = cx + radius, cy
            else:
                scale = radius / d
                x, y = cx + (x - cx) * scale, cy + (y - cy) * scale
            moved = True
        if not moved:
            break
    return x, y


def _optimize_topology(
    instance: ChainsInstance,
    edges: tuple[tuple[int, int], ...],
    steiner_count: int,
    rng: random.Random,
) -> tuple[float, list[Point]]:
    """Coordinate descent: sweep the Steiner points, each taking damped
    geometric-median steps toward its tree neighbors, projected off circles."""
    n = len(instance.terminals)
    xs = [p[0] for p in instance.terminals]
    ys = [p[1] for p in instance.terminals]
    points: list[Point] = list(instance.terminals)
    points += [
        (rng.uniform(min(xs), max(xs)), rng.uniform(min(ys), max(ys)))
        for _ in range(steiner_count)
    ]
    neighbors: list[list[int]] = [[] for _ in range(n + steiner_count)]
    for a, b in edges:
        neighbors[a].append(b)
        neighbors[b].append(a)

    for _ in range(_MAX_SWEEPS):
        shift = 0.0
        for i in range(n, n + steiner_count):
            px, py = points[i]
            for _ in range(_INNER_STEPS):
                num_x = num_y = den = 0.0
                for j in neighbors[i]:
                    qx, qy = points[j]
                    w = 1.0 / max(math.hypot(px - qx, py - qy), 1e-12)
                    num_x += qx * w
                    num_y += qy * w
                    den += w
                px, py = _project(num_x / den, num_y / den, instance.circles, instance.radius)
            shift = max(shift, abs(px - points[i][0]) + abs(py - points[i][1]))
            points[i] = (px, py)
        if shift < 1e-11:
            break

    length = sum(
        math.hypot(points[a][0] - points[b][0], points[a][1] - points[b][1]) for a, b in edges
    )
    return length, points[n:]


def _feasible(steiner: list[Point], circles: tuple[Point, ...], radius: float) -> bool:
    return all(
        math.hypot(px - cx, py - cy) >= radius - 1e-9
        for px, py in steiner
        for cx, cy in circles
    )


def oracle_chains(instance: ChainsInstance, restarts: int = 3) -> tuple[float, str]:
    """Near-optimal tree length: the terminal-only tree, improved by trying
    every junction topology with up to n - 2 Steiner points, each optimized
    from several deterministic random starts."""
    n = len(instance.terminals)
    if n > ORACLE_TERMINAL_LIMIT:
        raise TooLargeError(f"{n} terminals exceeds oracle limit {ORACLE_TERMINAL_LIMIT}")

    best_length, mst_edges = _mst(instance.terminals)
    best_steiner: list[Point] = []
    best_edges: tuple[tuple[int, int], ...] = tuple(mst_edges)

    for s in range(1, n - 1):
        for topo_idx, edges in enumerate(_topologies(n, s)):
            for restart in range(restarts):
                rng = random.Random(f"chains-oracle:{s}:{topo_idx}:{restart}")
                length, steiner = _optimize_topology(instance, edges, s, rng)
                if length < best_length - 1e-12 and _feasible(
                    steiner, instance.circles, instance.radius
                ):
                    best_length = length
                    best_steiner = steiner
                    best_edges = edges

    lines = [str(len(best_steiner))]
    lines += [f"{x:.9f} {y:.9f}" for x, y in best_steiner]
    lines.append(str(len(best_edges)))
    lines += [f"{a} {b}" for a, b in best_edges]
    return best_length, "\n".join(lines) + "\n"


def generate_chains(seed: int, n: int, m: int, radius: float, extent: float = 10.0) -> str:
    """Deterministic random instance: n distinct terminals and m circle
    centers uniform in [0, extent]^2, centers resampled until no terminal
    lies strictly inside a circle. Coordinates carry 6 decimal places."""
    if n < 2:
        raise ValueError("n must be >= 2")
    if radius < 0:
        raise ValueError("radius must be >= 0")
    rng = random.Random(f"chains:{seed}")
    terminals: list[Point] = []
    taken = set()
    while len(terminals) < n:
        p = (round(rng.uniform(0, extent), 6), round(rng.uniform(0, extent), 6))
        if p not in taken:
            taken.add(p)
            terminals.append(p)
    circles: list[Point] = []
    for _ in range(m):
        for _ in range(10000):
            c = (round(rng.uniform(0, extent), 6), round(rng.uniform(0, extent), 6))
            if all(math.hypot(tx - c[0], ty - c[1]) >= radius for tx, ty in terminals):
                circles.append(c)
                break
        else:
            raise ValueError("cannot place a circle clear of every terminal")
    lines = [f"{n} {m} {radius:.6f}"]
    lines += [f"{x:.6f} {y:.6f}" for x, y in terminals]
    lines += [f"{x:.6f} {y:.6f}" for x, y in circles]
    return "\n".join(lines) + "\n"
