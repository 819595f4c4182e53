"""Whitespace-token reader shared by every solution parser.

Judges must survive arbitrary solver output, so every read is bounded and
validated; failures raise SolutionFormatError with the 1-based token
position, which judges convert into a FormatError verdict.
"""

from __future__ import annotations

import math
import re

MAX_SOLUTION_BYTES = 64 * 1024 * 1024
_MAX_INT_DIGITS = 19  # anything a sane solution needs fits in 63 bits
_MAX_FLOAT_CHARS = 64

_TOKEN_RE = re.compile(rb"\S+")
_INT_RE = re.compile(rb"[+-]?[0-9]+\Z")
_FLOAT_RE = re.compile(rb"[+-]?([0-9]+\.?[0-9]*|\.[0-9]+)([eE][+-]?[0-9]+)?\Z")


class SolutionFormatError(Exception):
    """Solution text does not follow the documented output format."""


def _show(token: bytes) -> str:
    text = token[:24].decode("latin-1", "replace")
    if len(token) > 24:
        text += "..."
    return repr(text)


class TokenReader:
    def __init__(self, data: bytes | str):
        if isinstance(data, str):
            data = data.encode("utf-8", "replace")
        if len(data) > MAX_SOLUTION_BYTES:
            raise SolutionFormatError("output too large")
        self._tokens = _TOKEN_RE.finditer(data)
        self.position = 0  # 1-based index of the last token consumed

    def _next(self, what: str) -> bytes:
        match = next(self._tokens, None)
        if match is None:
            raise SolutionFormatError(f"token {self.position + 1} ({what}): unexpected end of output")
        self.position += 1
        return match.group(0)

    def take_word(self, what: str) -> bytes:
        return self._next(what)

    def take_int(self, what: str, lo: int | None = None, hi: int | None = None) -> int:
        token = self._next(what)
        if len(token) > _MAX_INT_DIGITS + 1 or not _INT_RE.fullmatch(token):
            raise SolutionFormatError(f"token {self.position} ({what}): expected integer, got {_show(token)}")
        value = int(token)
        if lo is not None and value < lo:
            raise SolutionFormatError(f"token {self.position} ({what}): expected integer >= {lo}, got {value}")
        if hi is not None and value > hi:
            raise SolutionFormatError(f"token {self.position} ({what}): expected integer <= {hi}, got {value}")
        return value

    def take_float(self, what: str) -> float:
        token = self._next(what)
        if len(token) > _MAX_FLOAT_CHARS or not _FLOAT_RE.fullmatch(token):
            raise SolutionFormatError(f"token {self.position} ({what}): expected number, got {_show(token)}")
        value = float(token)
        if not math.isfinite(value):
            raise SolutionFormatError(f"token {self.position} ({what}): number is not finite")
        return value

    def expect_end(self) -> None:
        match = next(self._tokens, None)
        if match is not None:
            raise SolutionFormatError(f"token {self.position + 1}: unexpected trailing output {_show(match.group(0))}")
