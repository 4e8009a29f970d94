"""Selective text pseudonymization driven by a privacy-utility trade-off frontier."""

from .engine import AnonymizeResult, Engine, Mode, apply_user_edit, replace_text
from .pseudonymizer import AnonymizedDoc, PseudonymSession
from .taxonomy import NormalizedScoreTable, ScoreTable, category_of, load_taxonomy, normalize
from .tradeoff import (
    Frontier,
    SelectionPlan,
    TargetPoint,
    automatic_select,
    build_frontier,
    privacy_only_select,
    project,
)

__version__ = "0.1.0"

__all__ = [
    "AnonymizeResult",
    "AnonymizedDoc",
    "Engine",
    "Frontier",
    "Mode",
    "NormalizedScoreTable",
    "PseudonymSession",
    "ScoreTable",
    "SelectionPlan",
    "TargetPoint",
    "apply_user_edit",
    "automatic_select",
    "build_frontier",
    "category_of",
    "load_taxonomy",
    "normalize",
    "privacy_only_select",
    "project",
    "replace_text",
    "__version__",
]
