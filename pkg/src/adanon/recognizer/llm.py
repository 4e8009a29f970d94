"""Chat-completion client and the LLM recognition pipeline.

Any endpoint speaking the ``POST {base}/chat/completions`` JSON contract
works. A ``fixture://<directory>`` endpoint replays canned responses keyed
by a hash of the request, which keeps tests offline and deterministic.
"""

from __future__ import annotations

import hashlib
import json
import os
import time
from dataclasses import dataclass
from pathlib import Path

import httpx

from ..errors import BadResponseError, TransportError
from ..taxonomy import ScoreTable, category_of
from .annotations import align, normalize_whitespace, parse_annotations
from .prompts import build_prompt
from .spans import EntitySpan, Source

ENV_ENDPOINT = "ADANON_LLM_ENDPOINT"
ENV_KEY = "ADANON_LLM_KEY"
ENV_MODEL = "ADANON_LLM_MODEL"

FIXTURE_SCHEME = "fixture://"


@dataclass(frozen=True)
class LlmClientConfig:
    endpoint: str
    model_name: str = "qwen2.5-7b-instruct"
    api_key: str = ""
    timeout: float = 30.0
    max_retries: int = 2
    temperature: float = 0.0

    def __post_init__(self) -> None:
        if self.timeout <= 0:
            raise ValueError("timeout must be positive")
        if self.max_retries < 0:
            raise ValueError("max_retries cannot be negative")

    @classmethod
    def from_env(cls, **overrides) -> "LlmClientConfig":
        values = {
            "endpoint": os.environ.get(ENV_ENDPOINT, ""),
            "api_key": os.environ.get(ENV_KEY, ""),
        }
        if os.environ.get(ENV_MODEL):
            values["model_name"] = os.environ[ENV_MODEL]
        values.update(overrides)
        return cls(**values)


def request_fingerprint(model: str, messages: list[dict[str, str]]) -> str:
    """Stable hash identifying a chat request; names fixture files."""
    canonical = json.dumps(
        {"model": model, "messages": messages}, sort_keys=True, separators=(",", ":")
    )
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


def write_fixture(
    directory: str | Path, model: str, messages: list[dict[str, str]], content: str
) -> Path:
    """Record a canned completion for the given request; returns the file path."""
    path = Path(directory) / f"{request_fingerprint(model, messages)}.json"
    path.parent.mkdir(parents=True, exist_ok=True)
    body = {"choices": [{"message": {"role": "assistant", "content": content}}]}
    path.write_text(json.dumps(body, ensure_ascii=False, indent=2), encoding="utf-8")
    return path


class ChatClient:
    """Minimal chat-completion client with retries; per-request state only."""

    def __init__(self, config: LlmClientConfig):
        self.config = config

    def complete(self, messages: list[dict[str, str]]) -> str:
        if self.config.endpoint.startswith(FIXTURE_SCHEME):
            return self._complete_fixture(messages)
        return self._complete_http(messages)

    def _complete_fixture(self, messages: list[dict[str, str]]) -> str:
        directory = Path(self.config.endpoint[len(FIXTURE_SCHEME):])
        path = directory / f"{request_fingerprint(self.config.model_name, messages)}.json"
        if not path.exists():
            raise TransportError(f"no fixture recorded for this request under {directory}")
        return self._extract_content(json.loads(path.read_text(encoding="utf-8")))

    def _complete_http(self, messages: list[dict[str, str]]) -> str:
        url = self.config.endpoint.rstrip("/") + "/chat/completions"
        payload = {
            "model": self.config.model_name,
            "messages": messages,
            "temperature": self.config.temperature,
        }
        headers = {}
        if self.config.api_key:
            headers["Authorization"] = f"Bearer {self.config.api_key}"
        last_error: Exception | None = None
        for attempt in range(self.config.max_retries + 1):
            try:
                response = httpx.post(
                    url, json=payload, headers=headers, timeout=self.config.timeout
                )
            except httpx.HTTPError as exc:
                last_error = exc
                if attempt < self.config.max_retries:
                    time.sleep(min(0.25 * 2**attempt, 2.0))
                continue
            if response.status_code >= 500:
                last_error = TransportError(f"server error {response.status_code}")
                if attempt < self.config.max_retries:
                    time.sleep(min(0.25 * 2**attempt, 2.0))
                continue
            if response.status_code != 200:
                raise BadResponseError(f"endpoint returned {response.status_code}")
            return self._extract_content(response.json())
        raise TransportError(f"endpoint unreachable after {self.config.max_retries + 1} attempts: {last_error}")

    @staticmethod
    def _extract_content(body: object) -> str:
        try:
            content = body["choices"][0]["message"]["content"]  # type: ignore[index]
        except (KeyError, IndexError, TypeError) as exc:
            raise BadResponseError("response carries no completion content") from exc
        if not isinstance(content, str):
            raise BadResponseError("completion content is not text")
        return content


def recognize_llm(
    text: str,
    config: LlmClientConfig,
    table: ScoreTable,
    template_dir: str | Path | None = None,
    client: ChatClient | None = None,
) -> tuple[list[EntitySpan], list[str]]:
    """Prompt, parse, and align: the full LLM recognition pass.

    A completion with no entities that is not an echo of the input (for
    example a refusal) raises BadResponseError; a clean echo with no
    entities legitimately means nothing sensitive was found.
    """
    payload = build_prompt(text, template_dir)
    client = client or ChatClient(config)
    completion = client.complete(payload.as_messages())
    parsed = parse_annotations(completion)
    if not parsed.entities and normalize_whitespace(parsed.stripped) != normalize_whitespace(text):
        raise BadResponseError("completion is neither annotated nor an echo of the input")
    if not parsed.entities:
        return [], parsed.warnings
    spans, align_warnings = align(
        parsed.entities,
        parsed.stripped,
        text,
        categorize=lambda label: category_of(label, table),
        source=Source.LLM,
    )
    return spans, parsed.warnings + align_warnings
