"""Configuration file loading and engine assembly."""

from __future__ import annotations

import sys
from dataclasses import dataclass
from pathlib import Path

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from importlib import resources

from .dp import load_vocabulary
from .engine import Engine
from .errors import ConfigError
from .pseudonymizer import PseudonymGenerator, load_name_list
from .recognizer.llm import ENV_ENDPOINT, LlmClientConfig
from .recognizer.rules import load_rule_pack
from .taxonomy import load_taxonomy
from .tradeoff import DEFAULT_MAGNET_RADIUS

import os

DEFAULT_EPSILON = 10.0

_KNOWN_KEYS = {
    "scores_file",
    "rule_pack",
    "name_list",
    "embeddings",
    "magnet_radius",
    "epsilon",
    "state_dir",
    "auth_token",
    "llm_endpoint",
    "llm_model",
    "llm_key",
    "template_dir",
    "anonymize_all",
    "realistic_checksums",
}


@dataclass(frozen=True)
class AppConfig:
    scores_file: str | None = None
    rule_pack: str | None = None
    name_list: str | None = None
    embeddings: str | None = None
    magnet_radius: float = DEFAULT_MAGNET_RADIUS
    epsilon: float = DEFAULT_EPSILON
    state_dir: str | None = None
    auth_token: str | None = None
    llm_endpoint: str | None = None
    llm_model: str | None = None
    llm_key: str | None = None
    template_dir: str | None = None
    anonymize_all: bool = False
    realistic_checksums: bool = False


def load_config(path: str | Path | None) -> AppConfig:
    """Parse a TOML key/value config file; missing file is an error."""
    if path is None:
        return AppConfig()
    try:
        raw = tomllib.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"config file {path} is not valid TOML: {exc}") from exc
    unknown = set(raw) - _KNOWN_KEYS
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    if "epsilon" in raw and not raw["epsilon"] > 0:
        raise ConfigError("epsilon must be > 0")
    if "magnet_radius" in raw and raw["magnet_radius"] < 0:
        raise ConfigError("magnet_radius cannot be negative")
    return AppConfig(**raw)


def builtin_embeddings_path() -> str:
    return str(resources.files("adanon").joinpath("data/toy_embeddings.txt"))


def build_engine(config: AppConfig) -> Engine:
    """Assemble an engine from a config, loading any referenced data files.

    Without an embeddings path the shipped 100-token toy vocabulary backs
    DP mode; supply real vectors for anything beyond demos and tests.
    """
    table = load_taxonomy(config.scores_file)
    rule_pack = load_rule_pack(config.rule_pack)
    generator = PseudonymGenerator(
        name_lists={"name": load_name_list(config.name_list)} if config.name_list else None,
        realistic_checksums=config.realistic_checksums,
    )
    llm_config = None
    default_model = LlmClientConfig.__dataclass_fields__["model_name"].default
    if config.llm_endpoint:
        llm_config = LlmClientConfig(
            endpoint=config.llm_endpoint,
            model_name=config.llm_model or default_model,
            api_key=config.llm_key or "",
        )
    elif os.environ.get(ENV_ENDPOINT):
        llm_config = LlmClientConfig.from_env()
    vocab = load_vocabulary(config.embeddings or builtin_embeddings_path())
    return Engine.bootstrap(
        table=table,
        rule_pack=rule_pack,
        llm_config=llm_config,
        vocab=vocab,
        magnet_radius=config.magnet_radius,
        generator=generator,
        template_dir=config.template_dir,
        anonymize_all=config.anonymize_all,
    )
