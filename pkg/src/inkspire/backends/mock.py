"""Deterministic in-process backends for tests, demos, and desk-scale runs.

Every mock is a pure function of its request (aside from optional injected
latency, which perturbs timing but never pixels). The mock generator renders a
procedural arrangement of flat-colored shapes derived from a stable hash of
the request, with the control-image ink drawn on top; that gives the scaffold
pipeline real region boundaries and edges to chew on without a GPU.
"""

from __future__ import annotations

import hashlib
import random
import re
import threading
import time

import numpy as np

from ..scaffold import LabelMap, SoftEdgeMap, gradient_soft_edges
from .base import FixtureNotFoundError, GenerationRequest

INK_COLOR = (20, 20, 20)
PALETTE_STEP = 85  # channel values in {0, 85, 170, 255} survive coarse quantization


def prompt_hash(prompt: str) -> str:
    """Stable fixture key for an LLM prompt."""
    return hashlib.sha256(prompt.encode("utf-8")).hexdigest()[:16]


def _stable_digest(*parts: bytes) -> int:
    h = hashlib.sha256()
    for part in parts:
        h.update(part)
        h.update(b"\x00")
    return int.from_bytes(h.digest()[:8], "big")


class MockTextToImage:
    """Procedural stand-in for a sketch-conditioned generation server."""

    def __init__(
        self,
        latency_ms: tuple[float, float] = (0.0, 0.0),
        latency_seed: int = 0,
    ) -> None:
        self.latency_ms = latency_ms
        self._latency_rng = random.Random(latency_seed)
        self._lock = threading.Lock()

    def _sleep(self) -> None:
        lo, hi = self.latency_ms
        if hi <= 0:
            return
        with self._lock:
            delay = self._latency_rng.uniform(lo, hi)
        time.sleep(delay / 1000.0)

    def generate(self, request: GenerationRequest) -> np.ndarray:
        self._sleep()
        control = request.control_image
        if (control.height, control.width) != (request.height, request.width):
            raise ValueError(
                f"control image {control.height}x{control.width} does not match "
                f"requested {request.height}x{request.width}"
            )
        digest = _stable_digest(
            request.prompt.encode("utf-8"),
            str(request.seed).encode(),
            repr(request.adherence).encode(),
            control.pixels.tobytes(),
        )
        rng = np.random.default_rng(digest)
        h, w = request.height, request.width
        colors = rng.integers(0, 4, size=(6, 3)) * PALETTE_STEP
        img = np.empty((h, w, 3), dtype=np.uint8)
        img[:] = colors[0]
        yy, xx = np.mgrid[0:h, 0:w]
        n_shapes = int(rng.integers(3, 6))
        for i in range(n_shapes):
            color = colors[1 + i % 5]
            if rng.integers(0, 2) == 0:
                y0, x0 = rng.integers(0, h // 2), rng.integers(0, w // 2)
                y1 = int(y0 + rng.integers(h // 8, h // 2))
                x1 = int(x0 + rng.integers(w // 8, w // 2))
                img[y0 : min(y1, h), x0 : min(x1, w)] = color
            else:
                cy, cx = rng.integers(h // 4, 3 * h // 4), rng.integers(w // 4, 3 * w // 4)
                ry = int(rng.integers(max(2, h // 10), max(3, h // 3)))
                rx = int(rng.integers(max(2, w // 10), max(3, w // 3)))
                mask = ((yy - cy) / ry) ** 2 + ((xx - cx) / rx) ** 2 <= 1.0
                img[mask] = color
        img[control.ink_mask] = INK_COLOR
        return img


class MockSegmentation:
    """Color-quantization segmentation: flat regions become one label each."""

    def segment(self, design: np.ndarray) -> LabelMap:
        q = (design.astype(np.int64) // 64)
        combined = q[..., 0] * 16 + q[..., 1] * 4 + q[..., 2]
        _, dense = np.unique(combined, return_inverse=True)
        return LabelMap(labels=dense.reshape(combined.shape).astype(np.int32))


class MockSoftEdge:
    """Gradient-magnitude edges; same math as the built-in fallback detector."""

    def soft_edges(self, design: np.ndarray) -> SoftEdgeMap:
        return gradient_soft_edges(design)


class MockForeground:
    """Foreground masks for compositing tests.

    ``corner`` treats everything matching the top-left pixel as background,
    which strips the mock generator's flat backdrop; ``all`` keeps everything;
    ``left_half`` keeps only the left half.
    """

    def __init__(self, mode: str = "corner") -> None:
        if mode not in ("corner", "all", "left_half"):
            raise ValueError(f"unknown mock foreground mode {mode!r}")
        self.mode = mode

    def foreground_mask(self, design: np.ndarray) -> np.ndarray:
        h, w = design.shape[:2]
        if self.mode == "all":
            return np.ones((h, w), dtype=np.float64)
        if self.mode == "left_half":
            mask = np.zeros((h, w), dtype=np.float64)
            mask[:, : w // 2] = 1.0
            return mask
        corner = design[0, 0]
        return (~np.all(design == corner, axis=-1)).astype(np.float64)


class MockLLM:
    """Serves canned replies keyed by a stable hash of the exact prompt text."""

    def __init__(self, fixtures: dict[str, str] | None = None) -> None:
        self._fixtures: dict[str, str] = dict(fixtures or {})

    @classmethod
    def from_dir(cls, path) -> "MockLLM":
        """Load a fixtures directory of ``<hash>.txt`` reply files."""
        from pathlib import Path

        root = Path(path)
        if not root.is_dir():
            raise FileNotFoundError(f"LLM fixtures directory not found: {root}")
        fixtures = {}
        for f in sorted(root.glob("*.txt")):
            fixtures[f.stem] = f.read_text(encoding="utf-8")
        return cls(fixtures)

    def register(self, prompt: str, reply: str) -> str:
        """Map a prompt to a reply; returns the hash used as the key."""
        key = prompt_hash(prompt)
        self._fixtures[key] = reply
        return key

    def complete(self, prompt: str) -> str:
        key = prompt_hash(prompt)
        try:
            return self._fixtures[key]
        except KeyError:
            raise FixtureNotFoundError(key) from None


_WORD_BANK = {
    "nature": [
        "tortoise",
        "armadillo",
        "lotus flower",
        "waterfall",
        "bamboo grove",
        "jellyfish",
        "river stone",
        "willow tree",
        "seashell",
        "coral reef",
        "snow peak",
        "moonlit lake",
    ],
    "architecture": [
        "bunker",
        "pagoda",
        "suspension bridge",
        "zen garden",
        "geodesic dome",
        "lighthouse",
        "spiral staircase",
        "flying buttress",
        "tea house",
        "brutalist tower",
    ],
    "fashion": [
        "armor",
        "silk scarf",
        "pleated dress",
        "flowing gown",
        "leather jacket",
        "ribbon",
        "quilted coat",
        "ballet shoe",
        "knit sweater",
        "high collar cape",
    ],
}

_SUBJECT_RE = re.compile(r"design principles in (.+?) design")


class SyntheticLLM:
    """Fixture-free mock that fabricates plausible replies deterministically.

    Useful for running the full loop at a desk with arbitrary subjects and
    concepts (the fixture-backed mock only answers prompts it was primed
    with). Replies are a pure function of the prompt text.
    """

    def complete(self, prompt: str) -> str:
        if prompt.startswith("Describe the key design principles"):
            m = _SUBJECT_RE.search(prompt)
            subject = m.group(1) if m else "product"
            return (
                f"Key design principles for {subject} design include balanced "
                "proportions, honest materials, a clear visual hierarchy, and "
                "forms that follow function while leaving room for character."
            )
        if "Brainstorm analogical inspirations" in prompt:
            rng = random.Random(prompt_hash(prompt))
            lines = []
            picks: list[tuple[str, str]] = []
            for category, words in _WORD_BANK.items():
                for word in words:
                    picks.append((word, category))
            rng.shuffle(picks)
            for word, category in picks[:10]:
                lines.append(f"- {word} | {category}")
            return "\n".join(lines)
        if prompt.startswith("Which domain best fits"):
            for category, words in _WORD_BANK.items():
                for word in words:
                    if word in prompt:
                        return category
            return "nature"
        return "A short, uneventful reply."
