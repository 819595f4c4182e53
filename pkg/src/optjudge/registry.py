"""Registry of the six built-in problems.

Each entry binds a problem id to its judge, generator, text-format
documentation, and a reference oracle for tiny instances, so the CLI and
the test suite can treat every problem uniformly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable

from .errors import UnknownProblemError
from .manifest import Direction
from .problems import chains, fire, knap3d, painter, ruins, shop
from .verdicts import Verdict

Judge = Callable[[bytes, bytes], Verdict]


@dataclass(frozen=True)
class Problem:
    problem_id: str
    title: str
    direction: Direction
    summary: str
    judge: Judge
    generate: Callable[..., str]  # generate(seed=..., **params) -> instance text
    oracle: Callable[[bytes], tuple[Any, str]]  # instance text -> (optimum, witness)
    default_params: dict[str, Any] = field(default_factory=dict)
    format_doc: str = ""

    def description_text(self) -> str:
        return (
            f"# {self.title}\n\n{self.summary}\n\n"
            f"## Formats\n\n{self.format_doc.strip()}\n"
        )


PROBLEMS: dict[str, Problem] = {
    p.problem_id: p
    for p in (
        Problem(
            problem_id="ruins",
            title="Ancient Ruins",
            direction=Direction.MAXIMIZE,
            summary=(
                "Place axis-aligned rectangles on a value grid so that no "
                "forbidden grid line cuts through a rectangle's interior and "
                "no two rectangles overlap; maximize the summed cell value "
                "of the covered area."
            ),
            judge=ruins.judge_ruins,
            generate=ruins.generate_ruins,
            oracle=lambda text: ruins.oracle_ruins(ruins.parse_instance(text)),
            default_params={"width": 30, "height": 30, "line_density": 0.15},
            format_doc=ruins.__doc__ or "",
        ),
        Problem(
            problem_id="painter",
            title="Painting Artist",
            direction=Direction.MAXIMIZE,
            summary=(
                "Stamp unlimited copies of irregular grid shapes onto a "
                "colored canvas; every copy must sit on cells of one color "
                "and copies may not overlap. Maximize the total value of "
                "placed copies."
            ),
            judge=painter.judge_paint,
            generate=painter.generate_paint,
            oracle=lambda text: painter.oracle_paint(painter.parse_instance(text)),
            default_params={"width": 20, "height": 20, "colors": 4, "items": 8},
            format_doc=painter.__doc__ or "",
        ),
        Problem(
            problem_id="chains",
            title="Short Chains",
            direction=Direction.MINIMIZE,
            summary=(
                "Connect all terminals with straight segments of minimum "
                "total length, optionally adding Steiner points as junctions; "
                "Steiner points must stay out of the forbidden circles."
            ),
            judge=chains.judge_chains,
            generate=chains.generate_chains,
            oracle=lambda text: chains.oracle_chains(chains.parse_instance(text)),
            default_params={"n": 40, "m": 10, "radius": 4.0, "extent": 100.0},
            format_doc=chains.__doc__ or "",
        ),
        Problem(
            problem_id="fire",
            title="Aerial Firefighters",
            direction=Direction.MINIMIZE,
            summary=(
                "Schedule water drops for a fleet of planes against a "
                "deterministic spreading fire; minimize burned resources "
                "plus a penalty for fields burned to the ground."
            ),
            judge=fire.judge_fire,
            generate=fire.generate_fire,
            oracle=lambda text: fire.oracle_fire(fire.parse_instance(text)),
            default_params={
                "rows": 20,
                "cols": 20,
                "horizon": 50,
                "planes": 3,
                "ignition_count": 5,
            },
            format_doc=fire.__doc__ or "",
        ),
        Problem(
            problem_id="knap3d",
            title="3D Knapsack",
            direction=Direction.MAXIMIZE,
            summary=(
                "Pack a subset of boxes, each rotatable by axis permutation, "
                "into a rectangular container without overlap; maximize the "
                "packed value."
            ),
            judge=knap3d.judge_knap3d,
            generate=knap3d.generate_knap3d,
            oracle=lambda text: knap3d.oracle_knap3d(knap3d.parse_instance(text)),
            default_params={"width": 10, "height": 10, "depth": 10, "n": 30},
            format_doc=knap3d.__doc__ or "",
        ),
        Problem(
            problem_id="shop",
            title="Smart Customer",
            direction=Direction.MINIMIZE,
            summary=(
                "Buy every item from some seller, paying item prices, "
                "weight-bracketed shipping per used seller, and a flat "
                "per-parcel charge; minimize the total."
            ),
            judge=shop.judge_shop,
            generate=shop.generate_shop,
            oracle=lambda text: shop.oracle_shop(shop.parse_instance(text)),
            default_params={"n": 30, "m": 10, "parcel_cost": 20},
            format_doc=shop.__doc__ or "",
        ),
    )
}


def get_problem(problem_id: str) -> Problem:
    try:
        return PROBLEMS[problem_id]
    except KeyError:
        known = ", ".join(sorted(PROBLEMS))
        raise UnknownProblemError(f"unknown problem {problem_id!r} (known: {known})") from None
