"""End-to-end orchestration of the four anonymization modes.

Recognition runs once per (text, backend) and is cached, so moving the
target point only re-filters the cached spans instead of re-querying the
recognizer. DP mode bypasses recognition entirely but produces the same
result shape, which keeps the CLI, service, and UI uniform.
"""

from __future__ import annotations

import hashlib
import threading
from dataclasses import dataclass, field

from .dp import DpConfig, Vocabulary, dp_anonymize
from .errors import AdanonError, BadIndexError, EmptyInputError
from .pseudonymizer import (
    AnonymizedDoc,
    ChangeRegion,
    PseudonymGenerator,
    PseudonymSession,
    pseudonymize,
)
from .recognizer.llm import LlmClientConfig, recognize_llm
from .recognizer.rules import RulePack, load_rule_pack, recognize_rules
from .recognizer.spans import EntitySpan, Source
from .taxonomy import NormalizedScoreTable, ScoreTable, load_taxonomy, normalize
from .tradeoff import (
    DEFAULT_MAGNET_RADIUS,
    Frontier,
    SelectionPlan,
    TargetPoint,
    automatic_select,
    build_frontier,
    privacy_only_select,
    project,
)

AUTOMATIC = "automatic"
PRIVACY_ONLY = "privacy_only"
FULL = "full"
DP = "dp"

RULES_BACKEND = "rules"
LLM_BACKEND = "llm"


@dataclass(frozen=True)
class Mode:
    """One of: automatic, privacy_only(x), full(x, y), dp(epsilon)."""

    kind: str
    x: float = 0.0
    y: float = 0.0
    epsilon: float = 0.0

    @classmethod
    def automatic(cls) -> "Mode":
        return cls(kind=AUTOMATIC)

    @classmethod
    def privacy_only(cls, x: float) -> "Mode":
        _check_unit(x, "privacy level")
        return cls(kind=PRIVACY_ONLY, x=x)

    @classmethod
    def full(cls, x: float, y: float) -> "Mode":
        _check_unit(x, "privacy level")
        _check_unit(y, "performance level")
        return cls(kind=FULL, x=x, y=y)

    @classmethod
    def dp(cls, epsilon: float) -> "Mode":
        if not epsilon > 0:
            raise ValueError("epsilon must be > 0")
        return cls(kind=DP, epsilon=epsilon)


def _check_unit(value: float, what: str) -> None:
    if not 0.0 <= value <= 1.0:
        raise ValueError(f"{what} must lie in [0, 1], got {value}")


@dataclass(frozen=True)
class LabelEntry:
    """One See-Label row: which replacement stands for what kind of data."""

    replacement: str
    category: str
    type_name: str


@dataclass(frozen=True)
class AnonymizeResult:
    doc: AnonymizedDoc
    spans: tuple[EntitySpan, ...]
    plan: SelectionPlan | None
    labels: tuple[LabelEntry, ...]


def _labels_for(doc: AnonymizedDoc) -> tuple[LabelEntry, ...]:
    return tuple(
        LabelEntry(replacement=c.replacement, category=c.category, type_name=c.type_name)
        for c in doc.changes
    )


@dataclass
class Engine:
    """Holds the loaded taxonomy, frontier, and recognizer configuration."""

    table: ScoreTable
    normalized: NormalizedScoreTable
    frontier: Frontier
    rule_pack: RulePack
    llm_config: LlmClientConfig | None = None
    vocab: Vocabulary | None = None
    magnet_radius: float = DEFAULT_MAGNET_RADIUS
    generator: PseudonymGenerator = field(default_factory=PseudonymGenerator)
    template_dir: str | None = None
    anonymize_all: bool = False
    _span_cache: dict[tuple[str, str], tuple[tuple[EntitySpan, ...], tuple[str, ...]]] = field(
        default_factory=dict, repr=False
    )
    _cache_lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    @classmethod
    def bootstrap(
        cls,
        table: ScoreTable | None = None,
        rule_pack: RulePack | None = None,
        **kwargs,
    ) -> "Engine":
        table = table or load_taxonomy()
        normalized = normalize(table)
        return cls(
            table=table,
            normalized=normalized,
            frontier=build_frontier(normalized),
            rule_pack=rule_pack or load_rule_pack(),
            **kwargs,
        )

    def plan_for(self, mode: Mode) -> SelectionPlan:
        if mode.kind == AUTOMATIC:
            if self.anonymize_all:
                return privacy_only_select(self.frontier, 1.0)
            return automatic_select(self.frontier)
        if mode.kind == PRIVACY_ONLY:
            return privacy_only_select(self.frontier, mode.x)
        if mode.kind == FULL:
            return project(self.frontier, TargetPoint(mode.x, mode.y), self.magnet_radius)
        raise ValueError(f"no selection plan for mode {mode.kind}")

    def recognize(self, text: str, backend: str) -> tuple[tuple[EntitySpan, ...], tuple[str, ...]]:
        """Find sensitive spans; results are cached per (text, backend)."""
        key = (hashlib.sha256(text.encode("utf-8")).hexdigest(), backend)
        with self._cache_lock:
            cached = self._span_cache.get(key)
        if cached is not None:
            return cached
        if backend == RULES_BACKEND:
            spans, warnings = tuple(recognize_rules(text, self.rule_pack, self.table)), ()
        elif backend == LLM_BACKEND:
            if self.llm_config is None:
                raise AdanonError("LLM backend requested but no endpoint is configured")
            found, warn = recognize_llm(text, self.llm_config, self.table, self.template_dir)
            spans, warnings = tuple(found), tuple(warn)
        else:
            raise ValueError(f"unknown backend {backend!r}")
        with self._cache_lock:
            self._span_cache[key] = (spans, warnings)
        return spans, warnings

    def run(
        self,
        text: str,
        mode: Mode,
        backend: str = RULES_BACKEND,
        session: PseudonymSession | None = None,
        dp_seed: int = 0,
    ) -> AnonymizeResult:
        """Select, recognize, and substitute; returns the full result object."""
        if not text:
            raise EmptyInputError("cannot anonymize empty text")
        if mode.kind == DP:
            if self.vocab is None:
                raise AdanonError("DP mode requested but no embedding vocabulary is loaded")
            doc = dp_anonymize(text, self.vocab, DpConfig(epsilon=mode.epsilon, rng_seed=dp_seed))
            return AnonymizeResult(doc=doc, spans=(), plan=None, labels=_labels_for(doc))
        session = session or PseudonymSession.new()
        plan = self.plan_for(mode)
        spans, warnings = self.recognize(text, backend)
        doc = pseudonymize(
            text, list(spans), plan, session, self.generator, warnings=list(warnings)
        )
        return AnonymizeResult(doc=doc, spans=spans, plan=plan, labels=_labels_for(doc))


def apply_user_edit(result: AnonymizeResult, region_index: int, new_text: str) -> AnonymizeResult:
    """Override one replacement; later regions shift by the length delta."""
    doc = result.doc
    if not 0 <= region_index < len(doc.changes):
        raise BadIndexError(f"region index {region_index} out of range")
    target = doc.changes[region_index]
    delta = len(new_text) - (target.end - target.start)
    output = doc.output_text[: target.start] + new_text + doc.output_text[target.end :]
    changes: list[ChangeRegion] = []
    for i, region in enumerate(doc.changes):
        if i < region_index:
            changes.append(region)
        elif i == region_index:
            changes.append(
                ChangeRegion(
                    start=region.start,
                    end=region.start + len(new_text),
                    replacement=new_text,
                    category=region.category,
                    type_name=region.type_name,
                    source=Source.USER_EDIT,
                )
            )
        else:
            changes.append(
                ChangeRegion(
                    start=region.start + delta,
                    end=region.end + delta,
                    replacement=region.replacement,
                    category=region.category,
                    type_name=region.type_name,
                    source=region.source,
                )
            )
    warnings = list(doc.warnings)
    if new_text == doc.originals[region_index]:
        warnings.append(f"edit restores sensitive text in region {region_index}")
    new_doc = AnonymizedDoc(
        output_text=output,
        changes=tuple(changes),
        achieved=doc.achieved,
        warnings=tuple(warnings),
        originals=doc.originals,
    )
    return AnonymizeResult(
        doc=new_doc, spans=result.spans, plan=result.plan, labels=_labels_for(new_doc)
    )


def replace_text(result: AnonymizeResult) -> str:
    """The string a host application substitutes for its original input."""
    return result.doc.output_text
