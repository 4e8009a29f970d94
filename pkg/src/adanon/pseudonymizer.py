"""Consistent, format-preserving pseudonym substitution.

Replacements are derived from a per-session salt with a keyed hash, so the
same surface always maps to the same stand-in within a session, sessions
are reproducible, and nothing random needs to be stored. Strategies per
type: name lists, digit-preserving rewrites, safe email stand-ins, shifted
dates, and a bracketed type placeholder for everything else.
"""

from __future__ import annotations

import hmac
import hashlib
import re
import secrets
import time
from dataclasses import dataclass, field
from datetime import date, datetime, timedelta
from importlib import resources
from pathlib import Path

from .errors import ExhaustedRetriesError, InconsistentDocError
from .recognizer.spans import EntitySpan, Source, check_spans
from .tradeoff import SelectionPlan

MAX_ATTEMPTS = 16
SAFE_EMAIL_DOMAIN = "example.org"

NAME_TYPES = {"name"}
EMAIL_TYPES = {"email address", "email", "payment account"}
DATE_TYPES = {"date of birth", "birthday"}
DIGIT_TYPES = {
    "phone number",
    "id card",
    "identification card",
    "bank card number",
    "payment account",
    "user id",
}

_DATE_FORMATS: list[tuple[str, str]] = [
    ("%B %d, %Y", "month_name"),
    ("%Y-%m-%d", "iso"),
    ("%m/%d/%Y", "slash"),
]


@dataclass
class PseudonymSession:
    """Per-session replacement state: salt plus the (category, surface) map.

    Single-writer: concurrent pseudonymize calls against one session must
    be serialized externally (the service does this); use distinct sessions
    for independent documents.
    """

    session_id: str
    salt: bytes
    mapping: dict[tuple[str, str], str] = field(default_factory=dict)
    created_at: float = field(default_factory=time.time)

    @classmethod
    def new(cls, session_id: str | None = None) -> "PseudonymSession":
        return cls(session_id=session_id or secrets.token_hex(8), salt=secrets.token_bytes(16))

    def used_in(self, category: str) -> set[str]:
        return {v for (cat, _), v in self.mapping.items() if cat == category}


@dataclass(frozen=True)
class ChangeRegion:
    """A replaced run in the output text."""

    start: int
    end: int
    replacement: str
    category: str
    type_name: str
    source: Source = Source.RULES


@dataclass(frozen=True)
class AnonymizedDoc:
    """Output text plus the change regions that produced it.

    ``originals`` holds the replaced surfaces (parallel to ``changes``); it
    backs reconstruction and the opt-in original view, and is never exposed
    by the service unless explicitly requested.
    """

    output_text: str
    changes: tuple[ChangeRegion, ...]
    achieved: tuple[float, float]
    warnings: tuple[str, ...]
    originals: tuple[str, ...]


def _keyed_digest(salt: bytes, category: str, surface: str, attempt: int, block: int = 0) -> bytes:
    message = f"{category}\x1f{surface}\x1f{attempt}\x1f{block}".encode("utf-8")
    return hmac.new(salt, message, hashlib.sha256).digest()


def keyed_index(salt: bytes, category: str, surface: str, modulus: int, attempt: int = 0) -> int:
    """List index for a surface: keyed hash reduced modulo the list size."""
    return int.from_bytes(_keyed_digest(salt, category, surface, attempt), "big") % modulus


def _digit_stream(salt: bytes, category: str, surface: str, attempt: int):
    block = 0
    while True:
        for byte in _keyed_digest(salt, category, surface, attempt, block):
            yield byte % 10
        block += 1


def _replace_digits(surface: str, salt: bytes, category: str, attempt: int) -> str:
    stream = _digit_stream(salt, category, surface, attempt)
    return "".join(str(next(stream)) if ch.isdigit() else ch for ch in surface)


def _shift_date(surface: str, offset_days: int) -> str | None:
    for fmt, style in _DATE_FORMATS:
        try:
            parsed = datetime.strptime(surface.strip(), fmt).date()
        except ValueError:
            continue
        shifted = parsed + timedelta(days=offset_days)
        return _render_date(shifted, style)
    return None


def _render_date(d: date, style: str) -> str:
    if style == "month_name":
        return f"{d.strftime('%B')} {d.day}, {d.year}"
    if style == "iso":
        return d.isoformat()
    return f"{d.month:02d}/{d.day:02d}/{d.year}"


def _luhn_fix(surface: str) -> str:
    """Adjust the final digit so the number passes the card checksum."""
    digits = [int(c) for c in re.sub(r"\D", "", surface)]
    total = 0
    for i, d in enumerate(reversed(digits[:-1]), start=1):
        if i % 2 == 1:
            d *= 2
            if d > 9:
                d -= 9
        total += d
    check = (10 - total % 10) % 10
    out = []
    remaining = sum(ch.isdigit() for ch in surface)
    for ch in surface:
        if ch.isdigit():
            remaining -= 1
            out.append(str(check) if remaining == 0 else ch)
        else:
            out.append(ch)
    return "".join(out)


class PseudonymGenerator:
    """Produces replacements; strategy chosen by the span's type name.

    Realistic card checksums are off by default so generated numbers do not
    validate as plausible real cards.
    """

    def __init__(
        self,
        name_lists: dict[str, tuple[str, ...]] | None = None,
        realistic_checksums: bool = False,
    ):
        self.name_lists = name_lists if name_lists is not None else {"name": builtin_names()}
        self.realistic_checksums = realistic_checksums

    def _candidate(
        self, surface: str, category: str, type_name: str, session: PseudonymSession, attempt: int
    ) -> str:
        kind = type_name.lower()
        if kind in NAME_TYPES and self.name_lists.get("name"):
            names = self.name_lists["name"]
            return names[keyed_index(session.salt, category, surface, len(names), attempt)]
        if kind in EMAIL_TYPES and "@" in surface:
            digest = _keyed_digest(session.salt, category, surface, attempt)
            return f"u{digest.hex()[:10]}@{SAFE_EMAIL_DOMAIN}"
        if kind in DATE_TYPES:
            offset = 30 + int.from_bytes(hmac.new(session.salt, b"date-offset", hashlib.sha256).digest(), "big") % 336
            shifted = _shift_date(surface, offset)
            if shifted is not None:
                return shifted
        if kind in DIGIT_TYPES and any(ch.isdigit() for ch in surface):
            replaced = _replace_digits(surface, session.salt, category, attempt)
            if self.realistic_checksums and kind == "bank card number":
                replaced = _luhn_fix(replaced)
            return replaced
        suffix = f" {attempt + 1}" if attempt else ""
        return f"[{type_name}{suffix}]"

    def replacement(
        self, surface: str, category: str, type_name: str, session: PseudonymSession
    ) -> str:
        """Deterministic replacement; retries with a counter on any collision."""
        if not surface:
            raise ValueError("cannot pseudonymize an empty surface")
        key = (category, surface)
        if key in session.mapping:
            return session.mapping[key]
        used = session.used_in(category)
        for attempt in range(MAX_ATTEMPTS):
            candidate = self._candidate(surface, category, type_name, session, attempt)
            if candidate != surface and candidate not in used:
                session.mapping[key] = candidate
                return candidate
        raise ExhaustedRetriesError(
            f"no distinct replacement found for a {type_name} surface after {MAX_ATTEMPTS} attempts"
        )


def generate_replacement(
    surface: str,
    category: str,
    type_name: str,
    session: PseudonymSession,
    generator: PseudonymGenerator | None = None,
) -> str:
    """Module-level convenience over PseudonymGenerator.replacement."""
    return (generator or PseudonymGenerator()).replacement(surface, category, type_name, session)


def builtin_names() -> tuple[str, ...]:
    text = resources.files("adanon").joinpath("data/pseudonyms/names.txt").read_text("utf-8")
    return tuple(line.strip() for line in text.splitlines() if line.strip())


def load_name_list(path: str | Path) -> tuple[str, ...]:
    return tuple(
        line.strip() for line in Path(path).read_text(encoding="utf-8").splitlines() if line.strip()
    )


def pseudonymize(
    text: str,
    spans: list[EntitySpan],
    plan: SelectionPlan,
    session: PseudonymSession,
    generator: PseudonymGenerator | None = None,
    warnings: list[str] | None = None,
) -> AnonymizedDoc:
    """Replace exactly the spans whose category is in the plan.

    Bytes outside selected spans are preserved verbatim; change offsets
    refer to the output text.
    """
    check_spans(text, spans)
    generator = generator or PseudonymGenerator()
    pieces: list[str] = []
    changes: list[ChangeRegion] = []
    originals: list[str] = []
    cursor = 0
    out_len = 0
    for span in spans:
        if span.category not in plan.categories:
            continue
        gap = text[cursor : span.start]
        pieces.append(gap)
        out_len += len(gap)
        replacement = generator.replacement(span.surface, span.category, span.type_name, session)
        pieces.append(replacement)
        changes.append(
            ChangeRegion(
                start=out_len,
                end=out_len + len(replacement),
                replacement=replacement,
                category=span.category,
                type_name=span.type_name,
                source=span.source,
            )
        )
        originals.append(span.surface)
        out_len += len(replacement)
        cursor = span.end
    pieces.append(text[cursor:])
    return AnonymizedDoc(
        output_text="".join(pieces),
        changes=tuple(changes),
        achieved=plan.achieved,
        warnings=tuple(warnings or ()),
        originals=tuple(originals),
    )


def restore(doc: AnonymizedDoc) -> str:
    """Splice the stored originals back over every change region."""
    pieces: list[str] = []
    cursor = 0
    for region, original in zip(doc.changes, doc.originals):
        if region.start < cursor or region.end > len(doc.output_text):
            raise InconsistentDocError("change regions overlap or exceed the output text")
        if doc.output_text[region.start : region.end] != region.replacement:
            raise InconsistentDocError("a change region does not match the output text")
        pieces.append(doc.output_text[cursor : region.start])
        pieces.append(original)
        cursor = region.end
    pieces.append(doc.output_text[cursor:])
    return "".join(pieces)


def diff(original: str, doc: AnonymizedDoc) -> list[tuple[str, str, str]]:
    """(original slice, replacement, category) per change; validates reconstruction."""
    if len(doc.changes) != len(doc.originals):
        raise InconsistentDocError("change regions and originals are out of step")
    if restore(doc) != original:
        raise InconsistentDocError("document does not reconstruct the original text")
    return [
        (orig, region.replacement, region.category)
        for region, orig in zip(doc.changes, doc.originals)
    ]
