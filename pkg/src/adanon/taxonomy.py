"""Personal-information taxonomy: categories, types, and survey-derived scores.

The shipped dataset maps 14 information categories (with their detailed type
names) to mean privacy-risk and utility-impact ratings on a 1..7 Likert scale,
and normalizes both axes to the unit interval for the trade-off machinery.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .errors import MissingCategoryError, SchemaError, ScoreRangeError, UnresolvedScoreError

REQUIRED_CATEGORY_COUNT = 14
FALLBACK_CATEGORY = "other"

PROVENANCE_PAPER_TABLE = "PAPER_TABLE"
PROVENANCE_PAPER_TEXT = "PAPER_TEXT"
PROVENANCE_CONFIG = "CONFIG"
_PROVENANCE_VALUES = {PROVENANCE_PAPER_TABLE, PROVENANCE_PAPER_TEXT, PROVENANCE_CONFIG}

_ENTRY_FIELDS = {"id", "name", "privacy_raw", "utility_raw", "provenance", "types"}


@dataclass(frozen=True)
class PiType:
    """A detailed information type owned by exactly one category.

    Optional per-type score overrides are carried through from the data
    file for future type-level granularity; scoring is category-level
    everywhere today, so they are loaded and validated but not consumed.
    """

    type_name: str
    category: str
    privacy_raw: float | None = None
    utility_raw: float | None = None


@dataclass(frozen=True)
class ScoreEntry:
    """Per-category raw scores. ``utility_raw is None`` means unspecified."""

    category: str
    name: str
    privacy_raw: float
    utility_raw: float | None
    privacy_provenance: str
    utility_provenance: str


@dataclass(frozen=True)
class ScoreTable:
    """The loaded classification: ordered score entries plus the type list."""

    entries: tuple[ScoreEntry, ...]
    types: tuple[PiType, ...]
    _by_category: dict[str, ScoreEntry] = field(repr=False, default_factory=dict)
    _type_index: dict[str, str] = field(repr=False, default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "_by_category", {e.category: e for e in self.entries})
        object.__setattr__(
            self, "_type_index", {t.type_name.lower(): t.category for t in self.types}
        )

    @property
    def categories(self) -> tuple[str, ...]:
        return tuple(e.category for e in self.entries)

    def entry(self, category: str) -> ScoreEntry:
        return self._by_category[category]

    def name_of(self, category: str) -> str:
        return self._by_category[category].name


@dataclass(frozen=True)
class NormalizedScoreTable:
    """Per-category scores rescaled to [0, 1] on each axis."""

    categories: tuple[str, ...]
    p_hat: dict[str, float]
    m_hat: dict[str, float]
    names: dict[str, str] = field(default_factory=dict)


def builtin_scores_path() -> Path:
    return Path(str(resources.files("adanon").joinpath("data/scores.json")))


def _check_score(value: object, category: str, axis: str) -> float:
    if not isinstance(value, (int, float)) or isinstance(value, bool):
        raise SchemaError(f"{category}: {axis} score must be a number, got {value!r}")
    if not 1.0 <= float(value) <= 7.0:
        raise ScoreRangeError(f"{category}: {axis} score {value} outside [1, 7]")
    return float(value)


def _parse_provenance(raw: object, category: str) -> tuple[str, str]:
    if isinstance(raw, str):
        pair = (raw, raw)
    elif isinstance(raw, dict) and set(raw) <= {"privacy", "utility"}:
        pair = (raw.get("privacy", PROVENANCE_CONFIG), raw.get("utility", PROVENANCE_CONFIG))
    else:
        raise SchemaError(f"{category}: provenance must be a string or privacy/utility object")
    for value in pair:
        if value not in _PROVENANCE_VALUES:
            raise SchemaError(f"{category}: unknown provenance {value!r}")
    return pair


def load_taxonomy(source: str | Path | None = None) -> ScoreTable:
    """Load a score table from ``source`` (JSON), or the built-in dataset."""
    path = Path(source) if source is not None else builtin_scores_path()
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, ValueError) as exc:
        raise SchemaError(f"cannot read scores file {path}: {exc}") from exc

    if not isinstance(raw, dict) or set(raw) != {"categories"}:
        raise SchemaError("scores file must be an object with a single 'categories' key")
    if not isinstance(raw["categories"], list):
        raise SchemaError("'categories' must be a list")

    entries: list[ScoreEntry] = []
    types: list[PiType] = []
    seen_types: set[str] = set()
    for item in raw["categories"]:
        if not isinstance(item, dict):
            raise SchemaError("category entries must be objects")
        unknown = set(item) - _ENTRY_FIELDS
        if unknown:
            raise SchemaError(f"unknown fields in category entry: {sorted(unknown)}")
        missing = {"id", "name", "privacy_raw", "types"} - set(item)
        if missing:
            raise SchemaError(f"category entry missing fields: {sorted(missing)}")
        category = item["id"]
        privacy = _check_score(item["privacy_raw"], category, "privacy")
        utility_raw = item.get("utility_raw")
        utility = None if utility_raw is None else _check_score(utility_raw, category, "utility")
        pprov, uprov = _parse_provenance(item.get("provenance", PROVENANCE_CONFIG), category)
        if utility is None:
            uprov = PROVENANCE_CONFIG
        entries.append(
            ScoreEntry(
                category=category,
                name=item["name"],
                privacy_raw=privacy,
                utility_raw=utility,
                privacy_provenance=pprov,
                utility_provenance=uprov,
            )
        )
        for type_item in item["types"]:
            if isinstance(type_item, str):
                type_name, t_privacy, t_utility = type_item, None, None
            elif isinstance(type_item, dict) and set(type_item) <= {
                "name", "privacy_raw", "utility_raw",
            } and "name" in type_item:
                type_name = type_item["name"]
                t_privacy = type_item.get("privacy_raw")
                t_utility = type_item.get("utility_raw")
                if t_privacy is not None:
                    t_privacy = _check_score(t_privacy, type_name, "privacy")
                if t_utility is not None:
                    t_utility = _check_score(t_utility, type_name, "utility")
            else:
                raise SchemaError(f"{category}: bad type entry {type_item!r}")
            key = type_name.lower()
            if key in seen_types:
                raise SchemaError(f"type name {type_name!r} appears in more than one category")
            seen_types.add(key)
            types.append(
                PiType(
                    type_name=type_name,
                    category=category,
                    privacy_raw=t_privacy,
                    utility_raw=t_utility,
                )
            )

    if len({e.category for e in entries}) != len(entries):
        raise SchemaError("duplicate category ids")
    if len(entries) < REQUIRED_CATEGORY_COUNT:
        raise MissingCategoryError(
            f"expected {REQUIRED_CATEGORY_COUNT} categories, found {len(entries)}"
        )
    return ScoreTable(entries=tuple(entries), types=tuple(types))


def category_of(type_name: str, table: ScoreTable) -> str:
    """Resolve a type name to its owning category (case-insensitive).

    Unknown names fall back to the catch-all category, so the function is
    total: any label an upstream recognizer invents still lands somewhere.
    """
    return table._type_index.get(type_name.lower(), FALLBACK_CATEGORY)


def _scale(values: list[float]) -> list[float]:
    lo, hi = min(values), max(values)
    if hi == lo:
        return [0.5] * len(values)
    return [(v - lo) / (hi - lo) for v in values]


def normalize(table: ScoreTable | NormalizedScoreTable) -> NormalizedScoreTable:
    """Min-max rescale both score axes to [0, 1].

    The transform is affine and order-preserving; applying it to an already
    normalized table is the identity. A zero-range axis maps every category
    to 0.5.
    """
    if isinstance(table, NormalizedScoreTable):
        cats = table.categories
        privacy = _scale([table.p_hat[c] for c in cats])
        utility = _scale([table.m_hat[c] for c in cats])
        return NormalizedScoreTable(
            categories=cats,
            p_hat=dict(zip(cats, privacy)),
            m_hat=dict(zip(cats, utility)),
            names=dict(table.names),
        )

    unresolved = [e.category for e in table.entries if e.utility_raw is None]
    if unresolved:
        raise UnresolvedScoreError(f"unspecified utility scores for: {unresolved}")
    cats = table.categories
    privacy = _scale([table.entry(c).privacy_raw for c in cats])
    utility = _scale([table.entry(c).utility_raw for c in cats])  # type: ignore[misc]
    return NormalizedScoreTable(
        categories=cats,
        p_hat=dict(zip(cats, privacy)),
        m_hat=dict(zip(cats, utility)),
        names={c: table.name_of(c) for c in cats},
    )
