"""Smart Customer: buy n items from m sellers at minimum total cost. Each
item is bought from exactly one seller; a seller may not stock every item.
Every used seller ships one parcel: its shipping fee is a step function of
the total weight bought there (the first bracket whose limit covers the
weight applies), and each parcel additionally costs a flat K.

cost = sum of item prices
     + sum over used sellers of their shipping fee
     + K * (number of used sellers)

Instance text:
    n m K
    n item weights
    m price rows of n entries, -1 meaning "seller does not sell this item"
    per seller: a line "b" then b bracket lines "u c" with strictly
    increasing weight limits u; the last u covers any order weight

Solution text:
    n seller indices (0-based), one per item
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from decimal import Decimal

from ..errors import TooLargeError
from ..verdicts import Verdict, accepted, constraint_violation, format_error
from .textio import SolutionFormatError, TokenReader

ORACLE_ASSIGNMENT_LIMIT = 10**6


@dataclass(frozen=True)
class ShopInstance:
    weights: tuple[int, ...]
    prices: tuple[tuple[int, ...], ...]  # prices[seller][item], -1 = not sold
    brackets: tuple[tuple[tuple[int, int], ...], ...]  # per seller: (limit, cost)
    parcel_cost: int

    @property
    def item_count(self) -> int:
        return len(self.weights)

    @property
    def seller_count(self) -> int:
        return len(self.prices)


def parse_instance(text: bytes | str) -> ShopInstance:
    """Parse an instance the judge generated itself (trusted input)."""
    reader = TokenReader(text)
    n = reader.take_int("n", lo=1)
    m = reader.take_int("m", lo=1)
    parcel_cost = reader.take_int("K", lo=0)
    weights = tuple(reader.take_int("weight", lo=1) for _ in range(n))
    prices = tuple(
        tuple(reader.take_int("price", lo=-1) for _ in range(n)) for _ in range(m)
    )
    brackets = []
    for _ in range(m):
        b = reader.take_int("bracket count", lo=1)
        brackets.append(
            tuple(
                (reader.take_int("limit", lo=1), reader.take_int("cost", lo=0))
                for _ in range(b)
            )
        )
    reader.expect_end()
    return ShopInstance(weights, prices, tuple(brackets), parcel_cost)


def shipping_fee(instance: ShopInstance, seller: int, weight: int) -> int:
    for limit, cost in instance.brackets[seller]:
        if weight <= limit:
            return cost
    raise ValueError(f"seller {seller} has no bracket covering weight {weight}")


def assignment_cost(instance: ShopInstance, assignment: tuple[int, ...]) -> int:
    """Total cost of a feasible assignment (callers check feasibility)."""
    total = 0
    load: dict[int, int] = {}
    for item, seller in enumerate(assignment):
        total += instance.prices[seller][item]
        load[seller] = load.get(seller, 0) + instance.weights[item]
    for seller, weight in load.items():
        total += shipping_fee(instance, seller, weight)
    return total + instance.parcel_cost * len(load)


def judge_shop(instance_text: bytes | str, solution_text: bytes | str) -> Verdict:
    instance = parse_instance(instance_text)
    n = instance.item_count
    try:
        reader = TokenReader(solution_text)
        assignment = tuple(reader.take_int("seller") for _ in range(n))
        reader.expect_end()
    except SolutionFormatError as exc:
        return format_error(str(exc))

    for item, seller in enumerate(assignment):
        if not 0 <= seller < instance.seller_count:
            return constraint_violation(f"item {item} assigned to unknown seller {seller}")
        if instance.prices[seller][item] < 0:
            return constraint_violation(f"seller {seller} does not sell item {item}")
    return accepted(Decimal(assignment_cost(instance, assignment)))


def oracle_shop(instance: ShopInstance) -> tuple[int, str]:
    """Exact minimum over all seller assignments by brute force."""
    n, m = instance.item_count, instance.seller_count
    if m**n > ORACLE_ASSIGNMENT_LIMIT:
        raise TooLargeError(f"{m}^{n} assignments exceeds {ORACLE_ASSIGNMENT_LIMIT}")
    best: int | None = None
    best_assignment: tuple[int, ...] | None = None
    for assignment in itertools.product(range(m), repeat=n):
        if any(instance.prices[j][i] < 0 for i, j in enumerate(assignment)):
            continue
        cost = assignment_cost(instance, assignment)
        if best is None or cost < best:
            best = cost
            best_assignment = assignment
    if best is None or best_assignment is None:
        raise ValueError("instance has an item nobody sells")
    return best, " ".join(str(j) for j in best_assignment) + "\n"


def generate_shop(seed: int, n: int, m: int, parcel_cost: int) -> str:
    """Deterministic random instance: weights in [1, 10], about 70% of
    seller/item pairs priced in [1, 100] (uncovered items get one extra
    priced seller), 2-4 shipping brackets per seller with increasing costs
    and the last limit covering the full order weight."""
    if n < 1 or m < 1:
        raise ValueError("n and m must be >= 1")
    if parcel_cost < 0:
        raise ValueError("parcel cost must be >= 0")
    rng = random.Random(f"shop:{seed}")
    weights = [rng.randint(1, 10) for _ in range(n)]
    prices = [
        [rng.randint(1, 100) if rng.random() < 0.7 else -1 for _ in range(n)]
        for _ in range(m)
    ]
    for item in range(n):
        if all(prices[j][item] < 0 for j in range(m)):
            prices[rng.randrange(m)][item] = rng.randint(1, 100)
    total_weight = sum(weights)
    lines = [f"{n} {m} {parcel_cost}", " ".join(str(w) for w in weights)]
    lines += [" ".join(str(p) for p in row) for row in prices]
    for _ in range(m):
        b = rng.randint(2, 4)
        last = total_weight + b
        limits = sorted(rng.sample(range(1, last), b - 1)) + [last]
        lines.append(str(b))
        cost = rng.randint(1, 10)
        for limit in limits:
            lines.append(f"{limit} {cost}")
            cost += rng.randint(1, 10)
    return "\n".join(lines) + "\n"
