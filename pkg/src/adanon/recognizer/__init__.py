"""Sensitive-span recognition: deterministic rules and an LLM backend."""

from .annotations import ParseResult, align, parse_annotations
from .prompts import PromptPayload, build_prompt
from .rules import RulePack, load_rule_pack, luhn_valid, recognize_rules
from .llm import ChatClient, LlmClientConfig, recognize_llm
from .spans import EntitySpan, Source

__all__ = [
    "EntitySpan",
    "Source",
    "ParseResult",
    "parse_annotations",
    "align",
    "PromptPayload",
    "build_prompt",
    "RulePack",
    "load_rule_pack",
    "luhn_valid",
    "recognize_rules",
    "ChatClient",
    "LlmClientConfig",
    "recognize_llm",
]
