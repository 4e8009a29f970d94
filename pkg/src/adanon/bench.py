"""Desk-scale benchmark: seeded corpus generation and the mode comparison.

Ground truth comes from the corpus generator itself: every document embeds
sensitive values at known offsets, so recall and preservation are measured
against the seeding manifest rather than human judgment. Preservation of
non-sensitive tokens is a mechanical utility proxy, not a human rating.
"""

from __future__ import annotations

import csv
import hashlib
import json
import random
import time
from dataclasses import dataclass
from pathlib import Path

from .engine import Engine, Mode
from .errors import CorpusError
from .pseudonymizer import AnonymizedDoc, PseudonymSession
from .recognizer.rules import RulePack

import re

_WORD_RE = re.compile(r"\w+", re.UNICODE)

FIRST_NAMES = [
    "Borin", "Celra", "Darvin", "Elsha", "Fenmor", "Galia", "Hestor", "Ilona",
    "Jarek", "Kestra", "Lomond", "Mirela", "Norvik", "Oltana", "Pravin", "Querra",
]
LAST_NAMES = [
    "Ashvale", "Brimlock", "Corvane", "Dunmere", "Eastwick", "Farrow", "Gellan",
    "Holbrook", "Ivering", "Jonquil", "Kelwick", "Lanmoor", "Marrowby", "Nulford",
]

WORK_TEMPLATE = (
    "Hello, my name is {name} and I am rewriting my resume for an internal "
    "transfer. My manager wants a short summary of my last project before the "
    "review. You can reach me at {email} or call {phone} if anything in the "
    "draft needs a quick check. Please keep the tone plain and confident."
)
ACADEMIC_TEMPLATE = (
    "I am writing to a professor about joining their group next term. My "
    "student file is registered under {id} and my campus contact is {email}. "
    "I sign the letter as {name}. Could you help me make the opening paragraph "
    "sound specific to their recent work without overdoing the praise?"
)
LIFE_TEMPLATE = (
    "I need a simple budget plan for the next year. Most spending goes through "
    "the card {card} and my backup phone is {phone}. The home router at {ip} "
    "also needs a cheaper data plan. I am {name}, and my goal is to save a "
    "third of my income without giving up the weekend trips."
)

TEMPLATES = [
    ("work", WORK_TEMPLATE),
    ("academic", ACADEMIC_TEMPLATE),
    ("life", LIFE_TEMPLATE),
]

_SLOT_TYPES = {
    "name": ("Name", "personal_basic"),
    "email": ("Email Address", "personal_basic"),
    "phone": ("Phone Number", "personal_basic"),
    "card": ("Bank Card Number", "property"),
    "id": ("ID Card", "personal_identity"),
    "ip": ("IP Address", "online_identity"),
}


@dataclass(frozen=True)
class ManifestEntry:
    start: int
    end: int
    surface: str
    type_name: str
    category: str


@dataclass(frozen=True)
class SeededDocument:
    scenario: str
    text: str
    manifest: tuple[ManifestEntry, ...]


@dataclass(frozen=True)
class SeededCorpus:
    seed: int
    documents: tuple[SeededDocument, ...]

    def all_names(self) -> list[str]:
        return sorted(
            {
                entry.surface
                for doc in self.documents
                for entry in doc.manifest
                if entry.type_name == "Name"
            }
        )


def _luhn_check_digit(partial: str) -> str:
    total = 0
    for i, ch in enumerate(reversed(partial)):
        d = int(ch)
        if i % 2 == 0:  # positions counted with the coming check digit appended
            d *= 2
            if d > 9:
                d -= 9
        total += d
    return str((10 - total % 10) % 10)


def _make_values(rng: random.Random) -> dict[str, str]:
    name = f"{rng.choice(FIRST_NAMES)} {rng.choice(LAST_NAMES)}"
    user = name.split()[0].lower()
    email = f"{user}{rng.randint(10, 99)}@mailhost{rng.randint(1, 9)}.test"
    phone = f"({rng.randint(200, 989)}) {rng.randint(200, 989)}-{rng.randint(1000, 9999)}"
    partial = "".join(str(rng.randint(0, 9)) for _ in range(15))
    digits = partial + _luhn_check_digit(partial)
    card = " ".join(digits[i : i + 4] for i in range(0, 16, 4))
    national_id = str(rng.randint(1, 9)) + "".join(str(rng.randint(0, 9)) for _ in range(17))
    ip = ".".join(str(rng.randint(1, 254)) for _ in range(4))
    return {"name": name, "email": email, "phone": phone, "card": card, "id": national_id, "ip": ip}


def _fill(template: str, values: dict[str, str]) -> tuple[str, list[ManifestEntry]]:
    parts: list[str] = []
    manifest: list[ManifestEntry] = []
    cursor = 0
    length = 0
    for match in re.finditer(r"\{(\w+)\}", template):
        literal = template[cursor : match.start()]
        parts.append(literal)
        length += len(literal)
        slot = match.group(1)
        value = values[slot]
        type_name, category = _SLOT_TYPES[slot]
        manifest.append(
            ManifestEntry(
                start=length,
                end=length + len(value),
                surface=value,
                type_name=type_name,
                category=category,
            )
        )
        parts.append(value)
        length += len(value)
        cursor = match.end()
    parts.append(template[cursor:])
    return "".join(parts), manifest


def generate_corpus(seed: int, n_docs: int) -> SeededCorpus:
    """Deterministic synthetic consultation prompts with embedded PI."""
    rng = random.Random(seed)
    documents: list[SeededDocument] = []
    for i in range(n_docs):
        scenario, template = TEMPLATES[i % len(TEMPLATES)]
        text, manifest = _fill(template, _make_values(rng))
        documents.append(
            SeededDocument(scenario=scenario, text=text, manifest=tuple(manifest))
        )
    return SeededCorpus(seed=seed, documents=tuple(documents))


def save_corpus(corpus: SeededCorpus, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        for doc in corpus.documents:
            handle.write(
                json.dumps(
                    {
                        "scenario": doc.scenario,
                        "text": doc.text,
                        "manifest": [
                            {
                                "start": e.start,
                                "end": e.end,
                                "surface": e.surface,
                                "type": e.type_name,
                                "category": e.category,
                            }
                            for e in doc.manifest
                        ],
                    },
                    ensure_ascii=False,
                )
                + "\n"
            )


def load_corpus(path: str | Path) -> SeededCorpus:
    documents: list[SeededDocument] = []
    try:
        lines = Path(path).read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        raise CorpusError(f"cannot read corpus {path}: {exc}") from exc
    for line_no, line in enumerate(lines, 1):
        if not line.strip():
            continue
        try:
            raw = json.loads(line)
            manifest = tuple(
                ManifestEntry(
                    start=e["start"],
                    end=e["end"],
                    surface=e["surface"],
                    type_name=e["type"],
                    category=e["category"],
                )
                for e in raw["manifest"]
            )
            doc = SeededDocument(raw.get("scenario", "unknown"), raw["text"], manifest)
        except (ValueError, KeyError, TypeError) as exc:
            raise CorpusError(f"corpus line {line_no} is malformed: {exc}") from exc
        for entry in manifest:
            if doc.text[entry.start : entry.end] != entry.surface:
                raise CorpusError(f"corpus line {line_no}: manifest span does not match text")
        documents.append(doc)
    if not documents:
        raise CorpusError(f"corpus {path} contains no documents")
    return SeededCorpus(seed=-1, documents=tuple(documents))


def corpus_rule_pack(base: RulePack, corpus: SeededCorpus) -> RulePack:
    """The bench pack: default matchers plus a gazetteer of the seeded names."""
    return base.with_gazetteer("Name", corpus.all_names())


def _changed_original_intervals(doc: AnonymizedDoc) -> list[tuple[int, int]]:
    intervals: list[tuple[int, int]] = []
    out_cursor = 0
    orig_cursor = 0
    for region, original in zip(doc.changes, doc.originals):
        gap = region.start - out_cursor
        orig_start = orig_cursor + gap
        intervals.append((orig_start, orig_start + len(original)))
        out_cursor = region.end
        orig_cursor = orig_start + len(original)
    return intervals


def _doc_metrics(doc: SeededDocument, result_doc: AnonymizedDoc) -> tuple[int, int, int, int]:
    """(surfaces gone, surfaces total, non-sensitive tokens kept, total)."""
    gone = sum(1 for e in doc.manifest if e.surface not in result_doc.output_text)
    changed = _changed_original_intervals(result_doc)
    kept = 0
    total = 0
    for match in _WORD_RE.finditer(doc.text):
        t_start, t_end = match.start(), match.end()
        if any(t_start < e.end and e.start < t_end for e in doc.manifest):
            continue
        total += 1
        if not any(t_start < c_end and c_start < t_end for c_start, c_end in changed):
            kept += 1
    return gone, len(doc.manifest), kept, total


@dataclass(frozen=True)
class ModeReport:
    label: str
    residual_recall: float
    preservation: float
    mean_latency_ms: float
    doc_count: int
    categories: tuple[str, ...] | None


@dataclass(frozen=True)
class BenchReport:
    seed: int
    modes: tuple[ModeReport, ...]

    def as_dict(self) -> dict:
        return {
            "seed": self.seed,
            "modes": [
                {
                    "label": m.label,
                    "residual_recall": m.residual_recall,
                    "preservation": m.preservation,
                    "mean_latency_ms": m.mean_latency_ms,
                    "doc_count": m.doc_count,
                    "categories": list(m.categories) if m.categories is not None else None,
                }
                for m in self.modes
            ],
        }


def default_modes(epsilon: float) -> list[tuple[str, Mode]]:
    return [
        ("automatic", Mode.automatic()),
        ("privacy_only_0.5", Mode.privacy_only(0.5)),
        ("full_1_0", Mode.full(1.0, 0.0)),
        ("full_0_1", Mode.full(0.0, 1.0)),
        ("dp", Mode.dp(epsilon)),
    ]


def _session_for(seed: int, doc_index: int) -> PseudonymSession:
    salt = hashlib.sha256(f"bench:{seed}:{doc_index}".encode()).digest()[:16]
    return PseudonymSession(session_id=f"bench-{seed}-{doc_index}", salt=salt)


def run_bench(
    engine: Engine,
    corpus: SeededCorpus,
    modes: list[tuple[str, Mode]],
    seed: int,
) -> BenchReport:
    """Run every mode over every document with the rules backend."""
    reports: list[ModeReport] = []
    for label, mode in modes:
        gone_total = surface_total = kept_total = token_total = 0
        elapsed = 0.0
        categories: tuple[str, ...] | None = None
        for i, doc in enumerate(corpus.documents):
            started = time.perf_counter()
            result = engine.run(
                doc.text, mode, backend="rules", session=_session_for(seed, i), dp_seed=seed + i
            )
            elapsed += time.perf_counter() - started
            if result.plan is not None:
                categories = tuple(sorted(result.plan.categories))
            gone, total, kept, tokens = _doc_metrics(doc, result.doc)
            gone_total += gone
            surface_total += total
            kept_total += kept
            token_total += tokens
        reports.append(
            ModeReport(
                label=label,
                residual_recall=gone_total / surface_total if surface_total else 1.0,
                preservation=kept_total / token_total if token_total else 1.0,
                mean_latency_ms=1000.0 * elapsed / len(corpus.documents),
                doc_count=len(corpus.documents),
                categories=categories,
            )
        )
    return BenchReport(seed=seed, modes=tuple(reports))


def write_report(report: BenchReport, out_dir: str | Path) -> tuple[Path, Path]:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    json_path = out / "report.json"
    csv_path = out / "report.csv"
    json_path.write_text(json.dumps(report.as_dict(), indent=2) + "\n", encoding="utf-8")
    with open(csv_path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(["mode", "residual_recall", "preservation", "mean_latency_ms", "doc_count"])
        for m in report.modes:
            writer.writerow(
                [m.label, f"{m.residual_recall:.6f}", f"{m.preservation:.6f}",
                 f"{m.mean_latency_ms:.3f}", m.doc_count]
            )
    return json_path, csv_path
