"""Model-backend protocol: request/response types, errors, and interfaces.

Five backend kinds power the loop: text-to-image with sketch control,
semantic segmentation, soft-edge extraction, foreground extraction, and LLM
chat completion. Everything network-shaped lives behind these interfaces; no
other module constructs requests to model servers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Protocol, runtime_checkable

import numpy as np

from ..raster import ControlImage
from ..scaffold import LabelMap, SoftEdgeMap

BACKEND_KINDS = ("t2i", "segmentation", "soft_edge", "foreground", "llm")


class BackendError(Exception):
    """A backend call failed; carries the backend kind and remote detail."""

    def __init__(
        self,
        kind: str,
        message: str,
        *,
        status: int | None = None,
        body_excerpt: str | None = None,
        retryable: bool = False,
    ) -> None:
        super().__init__(f"{kind}: {message}")
        self.kind = kind
        self.status = status
        self.body_excerpt = body_excerpt
        self.retryable = retryable


class BackendTimeout(BackendError):
    """The call exceeded its configured timeout; idempotent, safe to retry."""

    def __init__(self, kind: str, message: str) -> None:
        super().__init__(kind, message, retryable=True)


class FixtureNotFoundError(BackendError):
    """Mock LLM had no canned reply for the prompt; names the missing hash."""

    def __init__(self, prompt_hash: str) -> None:
        super().__init__("llm", f"fixture not found for prompt hash {prompt_hash}")
        self.prompt_hash = prompt_hash


@dataclass
class GenerationRequest:
    """One text-to-image call: prompt, sketch control, adherence, and seed."""

    prompt: str
    control_image: ControlImage
    adherence: float
    seed: int
    width: int
    height: int
    extra: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.adherence <= 0:
            raise ValueError("adherence must be positive")
        if self.seed < 0:
            raise ValueError("seed must be unsigned")


@dataclass
class BackendConfig:
    """Where one backend lives and how patiently to call it."""

    kind: str
    endpoint: str = "mock"
    timeout_ms: int = 30_000
    auth_env: str | None = None  # env var holding the bearer token, never the token itself
    options: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.kind not in BACKEND_KINDS:
            raise ValueError(f"unknown backend kind {self.kind!r}")
        if self.timeout_ms <= 0:
            raise ValueError("timeout must be positive")


@runtime_checkable
class TextToImageBackend(Protocol):
    def generate(self, request: GenerationRequest) -> np.ndarray:
        """Return an (H, W, 3) uint8 design image of the requested size."""
        ...


@runtime_checkable
class SegmentationBackend(Protocol):
    def segment(self, design: np.ndarray) -> LabelMap: ...


@runtime_checkable
class SoftEdgeBackend(Protocol):
    def soft_edges(self, design: np.ndarray) -> SoftEdgeMap: ...


@runtime_checkable
class ForegroundBackend(Protocol):
    def foreground_mask(self, design: np.ndarray) -> np.ndarray:
        """Return an (H, W) float soft alpha mask in [0, 1]; 1 = foreground."""
        ...


@runtime_checkable
class LLMBackend(Protocol):
    def complete(self, prompt: str) -> str: ...
