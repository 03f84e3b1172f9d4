"""Analogy-driven inspiration: prompt chain, reply parsing, category tagging."""

from .engine import (
    AnalogyEngine,
    DesignPrinciples,
    Inspiration,
    InspirationRequest,
    InspirationSet,
)
from .parsing import (
    ADJECTIVE_STOPLIST,
    CATEGORIES,
    DEFAULT_CATEGORY,
    ParsedItem,
    ReplyParseError,
    normalize_label,
    parse_reply,
)
from .prompts import PromptLibrary, default_library

__all__ = [
    "AnalogyEngine",
    "DesignPrinciples",
    "Inspiration",
    "InspirationRequest",
    "InspirationSet",
    "ADJECTIVE_STOPLIST",
    "CATEGORIES",
    "DEFAULT_CATEGORY",
    "ParsedItem",
    "ReplyParseError",
    "normalize_label",
    "parse_reply",
    "PromptLibrary",
    "default_library",
]
