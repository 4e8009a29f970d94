"""Deterministic rule-based recognizer: regex matchers plus gazetteer literals."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from ..errors import SchemaError
from ..taxonomy import ScoreTable, category_of
from .spans import EntitySpan, Source

CARD_MIN_DIGITS = 13
CARD_MAX_DIGITS = 19


def luhn_valid(digits: str) -> bool:
    """Checksum used to validate card-number candidates."""
    if not digits.isdigit():
        return False
    total = 0
    for i, ch in enumerate(reversed(digits)):
        d = int(ch)
        if i % 2 == 1:
            d *= 2
            if d > 9:
                d -= 9
        total += d
    return total % 10 == 0


@dataclass(frozen=True)
class Matcher:
    type_name: str
    regex: re.Pattern[str]
    validator: str | None = None


@dataclass(frozen=True)
class RulePack:
    patterns: tuple[Matcher, ...]
    gazetteers: dict[str, tuple[str, ...]] = field(default_factory=dict)

    def with_gazetteer(self, type_name: str, literals: list[str]) -> "RulePack":
        merged = {k: v for k, v in self.gazetteers.items()}
        merged[type_name] = tuple(literals)
        return RulePack(patterns=self.patterns, gazetteers=merged)


def load_rule_pack(source: str | Path | None = None) -> RulePack:
    """Load a rule pack from JSON, or the built-in default."""
    if source is None:
        raw_text = resources.files("adanon").joinpath("data/rulepack.json").read_text("utf-8")
    else:
        raw_text = Path(source).read_text(encoding="utf-8")
    try:
        raw = json.loads(raw_text)
    except ValueError as exc:
        raise SchemaError(f"rule pack is not valid JSON: {exc}") from exc
    if not isinstance(raw, dict) or set(raw) - {"patterns", "gazetteers"}:
        raise SchemaError("rule pack must contain only 'patterns' and 'gazetteers'")
    matchers = []
    for item in raw.get("patterns", []):
        if set(item) - {"type", "regex", "validator"}:
            raise SchemaError(f"unknown pattern fields: {sorted(set(item) - {'type', 'regex'})}")
        try:
            compiled = re.compile(item["regex"])
        except re.error as exc:
            raise SchemaError(f"bad regex for {item.get('type')}: {exc}") from exc
        validator = item.get("validator")
        if validator not in (None, "luhn"):
            raise SchemaError(f"unknown validator {validator!r}")
        matchers.append(Matcher(item["type"], compiled, validator))
    gazetteers = {
        type_name: tuple(words)
        for type_name, words in raw.get("gazetteers", {}).items()
    }
    return RulePack(patterns=tuple(matchers), gazetteers=gazetteers)


def _card_ok(surface: str) -> bool:
    digits = re.sub(r"[ -]", "", surface)
    return CARD_MIN_DIGITS <= len(digits) <= CARD_MAX_DIGITS and luhn_valid(digits)


def _gazetteer_pattern(literal: str) -> re.Pattern[str]:
    escaped = re.escape(literal)
    prefix = r"\b" if literal[:1].isalnum() else ""
    suffix = r"\b" if literal[-1:].isalnum() else ""
    return re.compile(prefix + escaped + suffix)


def recognize_rules(text: str, pack: RulePack, table: ScoreTable) -> list[EntitySpan]:
    """Apply every matcher and gazetteer; deterministic for identical input.

    Overlapping candidates are resolved longest-match-first, then leftmost,
    then by pattern order in the pack.
    """
    candidates: list[tuple[int, int, str, int]] = []
    order = 0
    for matcher in pack.patterns:
        for match in matcher.regex.finditer(text):
            if matcher.validator == "luhn" and not _card_ok(match.group()):
                continue
            candidates.append((match.start(), match.end(), matcher.type_name, order))
        order += 1
    for type_name, literals in sorted(pack.gazetteers.items()):
        for literal in literals:
            if not literal:
                continue
            for match in _gazetteer_pattern(literal).finditer(text):
                candidates.append((match.start(), match.end(), type_name, order))
            order += 1

    candidates.sort(key=lambda c: (-(c[1] - c[0]), c[0], c[3]))
    taken: list[tuple[int, int, str]] = []
    for start, end, type_name, _ in candidates:
        if any(start < t_end and t_start < end for t_start, t_end, _ in taken):
            continue
        taken.append((start, end, type_name))
    taken.sort()
    return [
        EntitySpan(
            start=start,
            end=end,
            surface=text[start:end],
            type_name=type_name,
            category=category_of(type_name, table),
            source=Source.RULES,
        )
        for start, end, type_name in taken
    ]
