"""Inkspire: sketch-to-design-to-sketch co-creation loop.

Analogy-driven prompt construction, stroke-guided image generation with a
dynamic guidance schedule, and conversion of generated designs back into
low-fidelity sketch scaffolds, exposed over an HTTP API to a browser
sketching client.
"""

from .analogy import (
    AnalogyEngine,
    Inspiration,
    InspirationRequest,
    InspirationSet,
    PromptLibrary,
)
from .guidance import DEFAULT_SCHEDULE, GuidanceSchedule, draw_seed, guidance_at
from .raster import ControlImage, RasterConfig, rasterize
from .scaffold import (
    BoundaryMask,
    LabelMap,
    Scaffold,
    ScaffoldConfig,
    SoftEdgeMap,
    extract_boundaries,
    gradient_soft_edges,
    intersect,
    make_scaffold,
)
from .session import Event, Iteration, Session, Stroke, replay_stroke_events
from .stats import LogStats, compute_log_stats, events_from_jsonl, events_to_jsonl

__version__ = "0.1.0"

__all__ = [
    "AnalogyEngine",
    "Inspiration",
    "InspirationRequest",
    "InspirationSet",
    "PromptLibrary",
    "DEFAULT_SCHEDULE",
    "GuidanceSchedule",
    "draw_seed",
    "guidance_at",
    "ControlImage",
    "RasterConfig",
    "rasterize",
    "BoundaryMask",
    "LabelMap",
    "Scaffold",
    "ScaffoldConfig",
    "SoftEdgeMap",
    "extract_boundaries",
    "gradient_soft_edges",
    "intersect",
    "make_scaffold",
    "Event",
    "Iteration",
    "Session",
    "Stroke",
    "replay_stroke_events",
    "LogStats",
    "compute_log_stats",
    "events_from_jsonl",
    "events_to_jsonl",
    "__version__",
]
