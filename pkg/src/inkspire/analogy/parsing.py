"""Normalization of LLM inspiration lists into clean, deduplicated labels.

LLMs format lists every which way; the rules here are fixed so behavior stays
deterministic and testable:

1.  split on newlines, drop blank lines
2.  strip leading bullet markers (``-``, ``*``, ``•``) and numbering
    (``3.``, ``3)``)
3.  split off an optional trailing ``| category`` pair when the right side is
    one of the three known domains
4.  collapse internal whitespace runs, trim, strip trailing punctuation
5.  drop bare adjectives from a small stoplist (labels must be visually
    concrete noun phrases; this is best-effort)
6.  deduplicate case-insensitively, keeping the first occurrence's spelling

Normalizing an already-normalized list is the identity.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

CATEGORIES = ("nature", "architecture", "fashion")
DEFAULT_CATEGORY = "nature"

# Abstract qualities that show up when a model ignores "not adjectives".
ADJECTIVE_STOPLIST = frozenset(
    {
        "protective", "sleek", "modern", "elegant", "minimal", "minimalist",
        "fluid", "serene", "dynamic", "bold", "soft", "strong", "clean",
        "futuristic", "organic", "calm", "smooth", "light", "luxurious",
        "simple", "natural", "graceful", "peaceful", "transparent",
    }
)

_BULLET_RE = re.compile(r"^\s*(?:[-*•]+|\d+[.)])\s*")
_TRAILING_PUNCT_RE = re.compile(r"[\s.,;:!]+$")
_WS_RE = re.compile(r"\s+")


class ReplyParseError(ValueError):
    """The reply produced zero usable labels; carries the raw text."""

    def __init__(self, raw: str) -> None:
        super().__init__("could not parse any inspiration labels from reply")
        self.raw = raw


@dataclass(frozen=True)
class ParsedItem:
    label: str
    category: str | None  # None when the reply carried no category pair


def normalize_label(line: str) -> str:
    """Apply the bullet/numbering/whitespace/punctuation rules to one line."""
    line = _BULLET_RE.sub("", line)
    line = _TRAILING_PUNCT_RE.sub("", line)
    return _WS_RE.sub(" ", line).strip()


def _split_category(line: str) -> tuple[str, str | None]:
    if "|" not in line:
        return line, None
    head, _, tail = line.rpartition("|")
    category = tail.strip().lower()
    if category in CATEGORIES:
        return head, category
    return line, None


def parse_reply(text: str, count: int) -> list[ParsedItem]:
    """Parse a raw reply into at most ``count`` deduplicated labeled items.

    Raises :class:`ReplyParseError` when nothing usable is found.
    """
    items: list[ParsedItem] = []
    seen: set[str] = set()
    for raw_line in text.splitlines():
        stripped = _BULLET_RE.sub("", raw_line)
        stripped = _TRAILING_PUNCT_RE.sub("", stripped)
        head, category = _split_category(stripped)
        label = normalize_label(head)
        if not label:
            continue
        if label.lower() in ADJECTIVE_STOPLIST:
            continue
        key = label.lower()
        if key in seen:
            continue
        seen.add(key)
        items.append(ParsedItem(label=label, category=category))
        if len(items) >= count:
            break
    if not items:
        raise ReplyParseError(text)
    return items
