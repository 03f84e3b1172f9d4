"""Two-step LLM chain turning (subject, concept) into concrete inspirations.

Step 1 asks the model for the subject's design principles (cached per
subject); step 2 grounds brainstorming in those principles and asks for
visually concrete objects from three source domains. Selecting a result and
re-running the chain with it as the concept branches the exploration; children
record their parent label. Results are memoized per (subject, concept, count,
chain seed) so repeated requests inside a session cost nothing, and concurrent
calls for the same key coalesce into one backend request.
"""

from __future__ import annotations

import logging
import threading
from dataclasses import dataclass, field

from ..backends.base import BackendError, LLMBackend
from .parsing import CATEGORIES, DEFAULT_CATEGORY, ReplyParseError, parse_reply
from .prompts import PromptLibrary, default_library

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class InspirationRequest:
    """What to brainstorm: the product subject, the abstract concept, how many."""

    subject: str
    concept: str
    count: int = 10

    def __post_init__(self) -> None:
        if not self.subject.strip():
            raise ValueError("subject must be non-empty")
        if not self.concept.strip():
            raise ValueError("concept must be non-empty")
        if not 1 <= self.count <= 25:
            raise ValueError(f"count must lie in [1, 25], got {self.count}")


@dataclass(frozen=True)
class Inspiration:
    """A concrete analogical anchor, tagged with its source domain."""

    label: str
    category: str
    parent: str | None = None

    def __post_init__(self) -> None:
        if self.category not in CATEGORIES:
            raise ValueError(f"unknown category {self.category!r}")


@dataclass(frozen=True)
class DesignPrinciples:
    subject: str
    text: str


@dataclass
class InspirationSet:
    """Chain output: labeled items plus any degradation warnings."""

    request: InspirationRequest
    items: list[Inspiration]
    warnings: list[str] = field(default_factory=list)


class AnalogyEngine:
    """Runs and caches the two-step chain against an LLM backend."""

    def __init__(
        self,
        llm: LLMBackend,
        prompts: PromptLibrary | None = None,
        request_categories: bool = True,
    ) -> None:
        self.llm = llm
        self.prompts = prompts or default_library()
        self.request_categories = request_categories
        self._principles: dict[str, DesignPrinciples] = {}
        self._sets: dict[tuple, InspirationSet] = {}
        self._master = threading.Lock()
        self._key_locks: dict[object, threading.Lock] = {}

    def _lock_for(self, key: object) -> threading.Lock:
        with self._master:
            lock = self._key_locks.get(key)
            if lock is None:
                lock = self._key_locks[key] = threading.Lock()
            return lock

    # -- step 1 --------------------------------------------------------------

    def design_principles(self, subject: str) -> DesignPrinciples:
        """Fetch (and cache, per subject) the step-1 principles paragraph."""
        subject = subject.strip()
        if not subject:
            raise ValueError("subject must be non-empty")
        with self._lock_for(("principles", subject)):
            cached = self._principles.get(subject)
            if cached is not None:
                return cached
            reply = self.llm.complete(self.prompts.design_principles(subject)).strip()
            if not reply:
                raise BackendError("llm", f"empty design-principles reply for {subject!r}")
            result = DesignPrinciples(subject=subject, text=reply)
            self._principles[subject] = result
            return result

    # -- step 2 --------------------------------------------------------------

    def inspirations(
        self,
        request: InspirationRequest,
        parent: str | None = None,
        chain_seed: int = 0,
    ) -> InspirationSet:
        """Run step 2 for the request; ``chain_seed`` busts the memo to rerun."""
        key = (request.subject, request.concept, request.count, parent, chain_seed)
        with self._lock_for(("set", key)):
            cached = self._sets.get(key)
            if cached is not None:
                return cached
            result = self._run_chain(request, parent)
            self._sets[key] = result
            return result

    def branch(self, inspiration: Inspiration | str, request: InspirationRequest) -> InspirationSet:
        """Rerun the chain using a selected inspiration as the concept."""
        label = inspiration.label if isinstance(inspiration, Inspiration) else inspiration
        branched = InspirationRequest(
            subject=request.subject, concept=label, count=request.count
        )
        return self.inspirations(branched, parent=label)

    def _run_chain(self, request: InspirationRequest, parent: str | None) -> InspirationSet:
        principles = self.design_principles(request.subject)
        if self.request_categories:
            prompt = self.prompts.inspirations_with_categories(
                request.subject, request.concept, principles.text
            )
        else:
            prompt = self.prompts.inspirations(
                request.subject, request.concept, principles.text
            )
        reply = self.llm.complete(prompt)
        parsed = parse_reply(reply, request.count)  # raises ReplyParseError on zero items

        warnings: list[str] = []
        items: list[Inspiration] = []
        for entry in parsed:
            category = entry.category
            if category is None:
                category, fell_back = self.categorize(entry.label)
                if fell_back:
                    warnings.append(
                        f"category fallback to {DEFAULT_CATEGORY!r} for {entry.label!r}"
                    )
            items.append(Inspiration(label=entry.label, category=category, parent=parent))
        if len(items) < request.count:
            warnings.append(
                f"requested {request.count} inspirations, parsed {len(items)}"
            )
        return InspirationSet(request=request, items=items, warnings=warnings)

    # -- category assignment ---------------------------------------------------

    def categorize(self, label: str) -> tuple[str, bool]:
        """Classify one label into a domain; returns (category, fallback_used)."""
        if not label.strip():
            raise ValueError("label must be non-empty")
        try:
            reply = self.llm.complete(self.prompts.classify(label)).strip().lower()
        except BackendError as exc:
            logger.warning("category classification failed for %r: %s", label, exc)
            return DEFAULT_CATEGORY, True
        for category in CATEGORIES:
            if category in reply:
                return category, False
        logger.warning("unparseable category reply %r for label %r", reply, label)
        return DEFAULT_CATEGORY, True


__all__ = [
    "AnalogyEngine",
    "DesignPrinciples",
    "Inspiration",
    "InspirationRequest",
    "InspirationSet",
    "ReplyParseError",
]
