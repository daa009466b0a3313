"""Exception hierarchy shared by the whole package.

Each error carries the process exit code the CLI maps it to.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class SourceSpan:
    """Byte offsets [start, end) into the input text of a parse error."""

    start: int
    end: int

    def __post_init__(self):
        if self.start > self.end:
            raise ValueError("span start must not exceed end")


class TeamHyperError(Exception):
    exit_code = 1


class ParseError(TeamHyperError):
    exit_code = 2

    def __init__(self, message: str, span: SourceSpan | None = None):
        super().__init__(message)
        self.span = span

    def __str__(self):
        base = super().__str__()
        if self.span is not None:
            return f"{base} (at {self.span.start}..{self.span.end})"
        return base


class FragmentViolation(TeamHyperError):
    exit_code = 3


class LimitsExceeded(TeamHyperError):
    exit_code = 4
