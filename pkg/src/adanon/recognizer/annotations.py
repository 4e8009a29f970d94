"""Parsing of annotated recognizer output back into aligned spans.

The annotation format marks each entity inline as ``(surface)[Label]``.
Surfaces may contain balanced parentheses (phone numbers, IDs in brackets)
but never the two-character sequence ``)[`` at their top nesting level,
which keeps the grammar unambiguous. Anything that is not well-formed
entity markup passes through as plain text.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Callable

from ..errors import AlignmentError
from ..taxonomy import FALLBACK_CATEGORY
from .spans import EntitySpan, Source


@dataclass
class ParseResult:
    entities: list[tuple[str, str]]
    stripped: str
    warnings: list[str] = field(default_factory=list)


def _scan_entity(text: str, start: int) -> tuple[int, int] | None:
    """From an opening paren, find (close_paren, label_end) or None.

    Returns indices such that the surface is text[start+1:close_paren] and
    the label is text[close_paren+2:label_end]. None means the paren does
    not open well-formed entity markup.
    """
    depth = 1
    j = start + 1
    n = len(text)
    while j < n:
        ch = text[j]
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth == 0:
                if j + 1 < n and text[j + 1] == "[":
                    end = text.find("]", j + 2)
                    if end == -1 or "[" in text[j + 2 : end]:
                        return None
                    if j == start + 1 or end == j + 2:  # empty surface or label
                        return None
                    return j, end
                return None
            if depth == 1 and j + 1 < n and text[j + 1] == "[":
                # ")[" at the surface's top level: the grammar forbids it, so
                # this paren cannot be an entity opener; an inner one may be.
                return None
        j += 1
    return None


def parse_annotations(annotated: str) -> ParseResult:
    """Extract (surface, label) pairs and the markup-free reconstruction.

    Total over arbitrary input: malformed markup is kept as plain text and
    reported in the warnings list.
    """
    entities: list[tuple[str, str]] = []
    warnings: list[str] = []
    out: list[str] = []
    i = 0
    n = len(annotated)
    while i < n:
        ch = annotated[i]
        if ch == "(":
            hit = _scan_entity(annotated, i)
            if hit is not None:
                close, label_end = hit
                surface = annotated[i + 1 : close]
                label = annotated[close + 2 : label_end]
                entities.append((surface, label))
                out.append(surface)
                i = label_end + 1
                continue
            if _looks_like_markup(annotated, i):
                warnings.append(f"malformed entity markup near offset {i}")
        out.append(ch)
        i += 1
    return ParseResult(entities=entities, stripped="".join(out), warnings=warnings)


def _looks_like_markup(text: str, start: int) -> bool:
    """True when a failed paren still resembles ``(...)[...`` markup."""
    depth = 1
    for j in range(start + 1, len(text)):
        if text[j] == "(":
            depth += 1
        elif text[j] == ")":
            depth -= 1
            if depth == 0:
                return j + 1 < len(text) and text[j + 1] == "["
    return False


def normalize_whitespace(text: str) -> str:
    """Collapse whitespace runs to single spaces and trim the ends."""
    return " ".join(text.split())


def _tolerant_pattern(surface: str) -> re.Pattern[str]:
    parts = [re.escape(p) for p in surface.split()]
    return re.compile(r"\s+".join(parts)) if parts else re.compile(re.escape(surface))


def _find(original: str, surface: str, cursor: int) -> tuple[int, int] | None:
    idx = original.find(surface, cursor)
    if idx != -1:
        return idx, idx + len(surface)
    match = _tolerant_pattern(surface).search(original, cursor)
    if match:
        return match.start(), match.end()
    return None


def align(
    entities: list[tuple[str, str]],
    stripped: str,
    original: str,
    categorize: Callable[[str], str] | None = None,
    source: Source = Source.LLM,
) -> tuple[list[EntitySpan], list[str]]:
    """Locate parsed surfaces in the original text and emit spans.

    A faithful echo (equal after whitespace normalization) is walked with a
    single left-to-right cursor. A diverged echo falls back to locating each
    surface independently; surfaces that cannot be found are dropped with a
    warning. Raises AlignmentError only when every entity fails to align.
    """
    categorize = categorize or (lambda _label: FALLBACK_CATEGORY)
    faithful = normalize_whitespace(stripped) == normalize_whitespace(original)
    spans: list[EntitySpan] = []
    warnings: list[str] = []
    cursor = 0
    for surface, label in entities:
        hit = _find(original, surface, cursor)
        if hit is None and not faithful:
            hit = _find(original, surface, 0)
            if hit is not None and any(
                s.start < hit[1] and hit[0] < s.end for s in spans
            ):
                hit = None
        if hit is None:
            warnings.append(f"surface not found in original text: {label}")
            continue
        start, end = hit
        spans.append(
            EntitySpan(
                start=start,
                end=end,
                surface=original[start:end],
                type_name=label,
                category=categorize(label),
                source=source,
            )
        )
        if faithful or end > cursor:
            cursor = end
    if entities and not spans:
        raise AlignmentError("no recognized surface could be located in the input")
    spans.sort(key=lambda s: (s.start, s.end))
    deduped: list[EntitySpan] = []
    for span in spans:
        if deduped and span.start < deduped[-1].end:
            warnings.append(f"overlapping span dropped: {span.type_name}")
            continue
        deduped.append(span)
    return deduped, warnings
