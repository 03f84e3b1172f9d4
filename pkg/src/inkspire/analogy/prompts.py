"""Prompt templates for the two-step inspiration chain.

Templates live in plain text files with ``<subject>``, ``<concept>`` and
``<design principles from Step 1>`` placeholders and are loaded once at
startup. A deployment can point at its own template directory; file names
must match the packaged set.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

_TEMPLATE_DIR = Path(__file__).parent / "templates"
_FILES = {
    "design_principles": "design_principles.txt",
    "inspirations": "inspirations.txt",
    "category_suffix": "category_suffix.txt",
    "classify": "classify.txt",
}


@dataclass(frozen=True)
class PromptLibrary:
    """Rendered-prompt factory for the inspiration chain."""

    design_principles_template: str
    inspirations_template: str
    category_suffix: str
    classify_template: str

    @classmethod
    def load(cls, template_dir: Path | str | None = None) -> "PromptLibrary":
        base = Path(template_dir) if template_dir else _TEMPLATE_DIR
        texts = {}
        for key, name in _FILES.items():
            path = base / name
            if not path.is_file():
                raise FileNotFoundError(f"prompt template missing: {path}")
            texts[key] = path.read_text(encoding="utf-8").rstrip("\n")
        return cls(
            design_principles_template=texts["design_principles"],
            inspirations_template=texts["inspirations"],
            category_suffix=texts["category_suffix"],
            classify_template=texts["classify"],
        )

    def design_principles(self, subject: str) -> str:
        """Step-1 prompt: ask for the subject's design principles."""
        return self.design_principles_template.replace("<subject>", subject)

    def inspirations(self, subject: str, concept: str, principles: str) -> str:
        """Step-2 prompt: brainstorm analogical inspirations for the concept.

        The principles paragraph is substituted last so placeholder-like text
        inside it is never re-expanded.
        """
        return (
            self.inspirations_template.replace("<subject>", subject)
            .replace("<concept>", concept)
            .replace("<design principles from Step 1>", principles)
        )

    def inspirations_with_categories(self, subject: str, concept: str, principles: str) -> str:
        """Step-2 prompt extended to request ``label | category`` pairs."""
        return self.inspirations(subject, concept, principles) + " " + self.category_suffix

    def classify(self, label: str) -> str:
        """Single-label category classification prompt."""
        return self.classify_template.replace("<label>", label)


def default_library() -> PromptLibrary:
    return PromptLibrary.load()
