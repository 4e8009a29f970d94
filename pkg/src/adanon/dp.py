"""Word-level metric differential privacy over an embedding vocabulary.

Each in-vocabulary token is independently resampled with probability
proportional to exp(-epsilon * euclidean_distance / 2), the standard
exponential mechanism under a Euclidean metric. Out-of-vocabulary tokens
and separators pass through untouched.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import SchemaError
from .pseudonymizer import AnonymizedDoc, ChangeRegion
from .recognizer.spans import Source

DP_TYPE_NAME = "DP-perturbed"
DP_CATEGORY = "other"

_WORD_RE = re.compile(r"\w+", re.UNICODE)


class OutOfVocabError(SchemaError):
    """The requested token is not in the vocabulary."""


@dataclass(frozen=True)
class Vocabulary:
    tokens: tuple[str, ...]
    vectors: np.ndarray
    _index: dict[str, int] = field(repr=False, default_factory=dict)

    def __post_init__(self) -> None:
        if self.vectors.ndim != 2 or self.vectors.shape[0] != len(self.tokens):
            raise SchemaError("vectors must be one fixed-dimension row per token")
        if len(set(self.tokens)) != len(self.tokens):
            raise SchemaError("vocabulary tokens must be unique")
        object.__setattr__(self, "_index", {t: i for i, t in enumerate(self.tokens)})

    def __len__(self) -> int:
        return len(self.tokens)

    def index_of(self, token: str) -> int | None:
        return self._index.get(token.lower())


@dataclass(frozen=True)
class DpConfig:
    epsilon: float
    rng_seed: int = 0

    def __post_init__(self) -> None:
        if not np.isfinite(self.epsilon) or self.epsilon <= 0:
            raise ValueError("epsilon must be finite and positive")


def load_vocabulary(path: str | Path) -> Vocabulary:
    """Read `token v1 ... vd` lines; dimension set by the first line."""
    tokens: list[str] = []
    rows: list[list[float]] = []
    dim: int | None = None
    for line_no, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        if not line.strip():
            continue
        parts = line.split()
        if dim is None:
            dim = len(parts) - 1
            if dim < 1:
                raise SchemaError("embedding lines need a token and at least one value")
        if len(parts) - 1 != dim:
            raise SchemaError(f"line {line_no}: expected {dim} values, got {len(parts) - 1}")
        tokens.append(parts[0].lower())
        try:
            rows.append([float(v) for v in parts[1:]])
        except ValueError as exc:
            raise SchemaError(f"line {line_no}: bad number: {exc}") from exc
    if not tokens:
        raise SchemaError("embedding file has no tokens")
    return Vocabulary(tokens=tuple(tokens), vectors=np.asarray(rows, dtype=np.float64))


def replacement_distribution(token: str, vocab: Vocabulary, epsilon: float) -> np.ndarray:
    """Probability over the vocabulary of replacing ``token``; sums to 1."""
    idx = vocab.index_of(token)
    if idx is None:
        raise OutOfVocabError(f"token {token!r} is not in the vocabulary")
    distances = np.linalg.norm(vocab.vectors - vocab.vectors[idx], axis=1)
    scores = -epsilon * distances / 2.0
    scores -= scores.max()
    weights = np.exp(scores)
    return weights / weights.sum()


def _match_case(template: str, word: str) -> str:
    if template.isupper() and len(template) > 1:
        return word.upper()
    if template[:1].isupper():
        return word.capitalize()
    return word


def dp_anonymize(text: str, vocab: Vocabulary, config: DpConfig) -> AnonymizedDoc:
    """Perturb every in-vocabulary word token; deterministic for a fixed seed.

    The achieved pair reports the fraction of word tokens changed (privacy
    proxy) and the fraction preserved (utility proxy).
    """
    rng = np.random.default_rng(config.rng_seed)
    distributions: dict[int, np.ndarray] = {}
    pieces: list[str] = []
    changes: list[ChangeRegion] = []
    originals: list[str] = []
    cursor = 0
    out_len = 0
    total_tokens = 0
    changed_tokens = 0
    for match in _WORD_RE.finditer(text):
        token = match.group()
        total_tokens += 1
        idx = vocab.index_of(token)
        if idx is None:
            continue
        if idx not in distributions:
            distributions[idx] = replacement_distribution(vocab.tokens[idx], vocab, config.epsilon)
        sampled = int(rng.choice(len(vocab), p=distributions[idx]))
        if sampled == idx:
            continue
        replacement = _match_case(token, vocab.tokens[sampled])
        gap = text[cursor : match.start()]
        pieces.append(gap)
        out_len += len(gap)
        pieces.append(replacement)
        changes.append(
            ChangeRegion(
                start=out_len,
                end=out_len + len(replacement),
                replacement=replacement,
                category=DP_CATEGORY,
                type_name=DP_TYPE_NAME,
                source=Source.RULES,
            )
        )
        originals.append(token)
        out_len += len(replacement)
        cursor = match.end()
        changed_tokens += 1
    pieces.append(text[cursor:])
    preserved = 1.0 if total_tokens == 0 else 1.0 - changed_tokens / total_tokens
    return AnonymizedDoc(
        output_text="".join(pieces),
        changes=tuple(changes),
        achieved=(1.0 - preserved, preserved),
        warnings=(),
        originals=tuple(originals),
    )
