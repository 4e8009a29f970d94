"""The located-span type shared by every recognizer backend."""

from __future__ import annotations

import enum
from dataclasses import dataclass

from ..errors import SpanMismatchError


class Source(enum.Enum):
    RULES = "rules"
    LLM = "llm"
    USER_EDIT = "user_edit"


@dataclass(frozen=True)
class EntitySpan:
    """A sensitive substring located in the input text.

    Offsets are Unicode code-point indices; ``text[start:end] == surface``
    must hold for the text the span was produced from.
    """

    start: int
    end: int
    surface: str
    type_name: str
    category: str
    source: Source

    def __post_init__(self) -> None:
        if not 0 <= self.start < self.end:
            raise ValueError(f"bad span bounds ({self.start}, {self.end})")
        if self.end - self.start != len(self.surface):
            raise ValueError("span length does not match its surface")


def check_spans(text: str, spans: list[EntitySpan]) -> None:
    """Validate that spans match the text, are sorted, and do not overlap."""
    prev_end = 0
    for span in spans:
        if span.end > len(text) or text[span.start : span.end] != span.surface:
            raise SpanMismatchError(
                f"span ({span.start}, {span.end}) does not match the text slice"
            )
        if span.start < prev_end:
            raise SpanMismatchError("spans overlap or are unsorted")
        prev_end = span.end
