"""Backend suite: the one place the rest of the system calls models through.

``BackendSuite`` instruments every call with duration/outcome logging and a
single retry on timeout (all calls are idempotent by construction). The suite
is built from per-kind configs: endpoint ``"mock"`` selects the deterministic
in-process implementation, ``"synthetic"`` (LLM only) the fixture-free one,
``"none"`` (soft edge only) disables the backend so the built-in gradient
fallback takes over, and anything else is treated as a remote URL.
"""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass
from typing import Callable, TypeVar

import numpy as np

from ..raster import ControlImage
from ..scaffold import LabelMap, SoftEdgeMap
from .base import (
    BACKEND_KINDS,
    BackendConfig,
    BackendError,
    BackendTimeout,
    FixtureNotFoundError,
    ForegroundBackend,
    GenerationRequest,
    LLMBackend,
    SegmentationBackend,
    SoftEdgeBackend,
    TextToImageBackend,
)
from .http import HttpForeground, HttpLLM, HttpSegmentation, HttpSoftEdge, HttpTextToImage
from .mock import (
    MockForeground,
    MockLLM,
    MockSegmentation,
    MockSoftEdge,
    MockTextToImage,
    SyntheticLLM,
    prompt_hash,
)

logger = logging.getLogger(__name__)

T = TypeVar("T")


@dataclass
class BackendSuite:
    """All five backends behind one instrumented facade."""

    t2i: TextToImageBackend
    segmentation: SegmentationBackend
    soft_edge: SoftEdgeBackend | None
    foreground: ForegroundBackend
    llm: LLMBackend

    def _call(self, kind: str, fn: Callable[[], T]) -> T:
        attempts = 0
        while True:
            attempts += 1
            start = time.monotonic()
            try:
                result = fn()
            except BackendTimeout:
                elapsed = (time.monotonic() - start) * 1000.0
                logger.warning(
                    "backend call kind=%s outcome=timeout duration_ms=%.1f attempt=%d",
                    kind, elapsed, attempts,
                )
                if attempts >= 2:
                    raise
                continue  # one retry: calls are idempotent
            except BackendError as exc:
                elapsed = (time.monotonic() - start) * 1000.0
                logger.warning(
                    "backend call kind=%s outcome=error duration_ms=%.1f detail=%s",
                    kind, elapsed, exc,
                )
                raise
            except Exception as exc:
                elapsed = (time.monotonic() - start) * 1000.0
                logger.warning(
                    "backend call kind=%s outcome=error duration_ms=%.1f detail=%s",
                    kind, elapsed, exc,
                )
                raise BackendError(kind, str(exc)) from exc
            elapsed = (time.monotonic() - start) * 1000.0
            logger.info("backend call kind=%s outcome=ok duration_ms=%.1f", kind, elapsed)
            return result

    @staticmethod
    def _check_shape(kind: str, got: tuple, expected: tuple) -> None:
        if got != expected:
            raise BackendError(kind, f"size mismatch: returned {got}, design is {expected}")

    def generate(self, request: GenerationRequest) -> np.ndarray:
        return self._call("t2i", lambda: self.t2i.generate(request))

    def segment(self, design: np.ndarray) -> LabelMap:
        result = self._call("segmentation", lambda: self.segmentation.segment(design))
        self._check_shape("segmentation", result.shape, design.shape[:2])
        return result

    def soft_edges(self, design: np.ndarray) -> SoftEdgeMap | None:
        if self.soft_edge is None:
            return None
        result = self._call("soft_edge", lambda: self.soft_edge.soft_edges(design))
        self._check_shape("soft_edge", result.shape, design.shape[:2])
        return result

    def foreground_mask(self, design: np.ndarray) -> np.ndarray:
        result = self._call("foreground", lambda: self.foreground.foreground_mask(design))
        self._check_shape("foreground", result.shape, design.shape[:2])
        return result

    def complete(self, prompt: str) -> str:
        return self._call("llm", lambda: self.llm.complete(prompt))


def mock_suite(
    t2i_latency_ms: tuple[float, float] = (0.0, 0.0),
    latency_seed: int = 0,
    llm: LLMBackend | None = None,
    foreground_mode: str = "corner",
) -> BackendSuite:
    """All-mock suite; tests pass their own primed LLM when they need one."""
    return BackendSuite(
        t2i=MockTextToImage(latency_ms=t2i_latency_ms, latency_seed=latency_seed),
        segmentation=MockSegmentation(),
        soft_edge=MockSoftEdge(),
        foreground=MockForeground(mode=foreground_mode),
        llm=llm if llm is not None else MockLLM(),
    )


def _build_one(config: BackendConfig):
    opts = config.options
    if config.endpoint == "mock":
        if config.kind == "t2i":
            latency = opts.get("latency_ms", [0, 0])
            return MockTextToImage(
                latency_ms=(float(latency[0]), float(latency[1])),
                latency_seed=int(opts.get("latency_seed", 0)),
            )
        if config.kind == "segmentation":
            return MockSegmentation()
        if config.kind == "soft_edge":
            return MockSoftEdge()
        if config.kind == "foreground":
            return MockForeground(mode=opts.get("mode", "corner"))
        if config.kind == "llm":
            fixtures_dir = opts.get("fixtures_dir")
            return MockLLM.from_dir(fixtures_dir) if fixtures_dir else MockLLM()
    if config.endpoint == "synthetic" and config.kind == "llm":
        return SyntheticLLM()
    if config.endpoint == "none" and config.kind == "soft_edge":
        return None
    adapters = {
        "t2i": HttpTextToImage,
        "segmentation": HttpSegmentation,
        "soft_edge": HttpSoftEdge,
        "foreground": HttpForeground,
        "llm": HttpLLM,
    }
    return adapters[config.kind](config)


def build_suite(configs: dict[str, BackendConfig]) -> BackendSuite:
    """Instantiate a suite from per-kind configs; missing kinds default to mock."""
    built = {}
    for kind in BACKEND_KINDS:
        config = configs.get(kind, BackendConfig(kind=kind))
        built[kind] = _build_one(config)
    return BackendSuite(
        t2i=built["t2i"],
        segmentation=built["segmentation"],
        soft_edge=built["soft_edge"],
        foreground=built["foreground"],
        llm=built["llm"],
    )


__all__ = [
    "BackendSuite",
    "BackendConfig",
    "BackendError",
    "BackendTimeout",
    "FixtureNotFoundError",
    "GenerationRequest",
    "MockTextToImage",
    "MockSegmentation",
    "MockSoftEdge",
    "MockForeground",
    "MockLLM",
    "SyntheticLLM",
    "prompt_hash",
    "mock_suite",
    "build_suite",
    "HttpTextToImage",
    "HttpSegmentation",
    "HttpSoftEdge",
    "HttpForeground",
    "HttpLLM",
]
