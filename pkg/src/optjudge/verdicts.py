"""Verdicts: the outcome of judging one solution against one instance."""

from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal
from enum import Enum


class VerdictKind(str, Enum):
    ACCEPTED = "Accepted"
    FORMAT_ERROR = "FormatError"
    CONSTRAINT_VIOLATION = "ConstraintViolation"
    RUNTIME_ERROR = "RuntimeError"
    TIME_LIMIT_EXCEEDED = "TimeLimitExceeded"
    JUDGE_ERROR = "JudgeError"


@dataclass(frozen=True)
class Verdict:
    """Either an accepted objective value or a categorized, message-bearing failure."""

    kind: VerdictKind
    score: Decimal | None = None
    message: str = ""

    def __post_init__(self) -> None:
        if (self.kind is VerdictKind.ACCEPTED) != (self.score is not None):
            raise ValueError("a verdict carries a score exactly when it is Accepted")
        if self.kind is not VerdictKind.ACCEPTED and not self.message:
            raise ValueError(f"{self.kind.value} verdict requires a non-empty message")

    @property
    def accepted(self) -> bool:
        return self.kind is VerdictKind.ACCEPTED


def accepted(score: int | str | Decimal, message: str = "") -> Verdict:
    if not isinstance(score, Decimal):
        score = Decimal(score)
    return Verdict(VerdictKind.ACCEPTED, score, message)


def format_error(message: str) -> Verdict:
    return Verdict(VerdictKind.FORMAT_ERROR, None, message)


def constraint_violation(message: str) -> Verdict:
    return Verdict(VerdictKind.CONSTRAINT_VIOLATION, None, message)


def runtime_error(message: str) -> Verdict:
    return Verdict(VerdictKind.RUNTIME_ERROR, None, message)


def time_limit_exceeded(message: str) -> Verdict:
    return Verdict(VerdictKind.TIME_LIMIT_EXCEEDED, None, message)


def judge_error(message: str) -> Verdict:
    return Verdict(VerdictKind.JUDGE_ERROR, None, message)


def verdict_to_jsonable(v: Verdict) -> dict:
    return {
        "kind": v.kind.value,
        "score": None if v.score is None else str(v.score),
        "message": v.message,
    }


def verdict_from_jsonable(data: dict) -> Verdict:
    kind = VerdictKind(data["kind"])
    raw = data.get("score")
    score = None if raw is None else Decimal(raw)
    return Verdict(kind, score, data.get("message", ""))
