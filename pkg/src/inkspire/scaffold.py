"""Design-to-sketch scaffold extraction.

A generated design is abstracted into a low-fidelity sketch underlay in three
steps: semantic segmentation gives a label map, the label map gives binary
region-boundary lines (4-connectivity, both sides of an edge marked), and the
boundary lines gate a soft-edge intensity map through a pixel-wise
intersection. The soft-edge intensities are kept as-is rather than binarized
so the result preserves varying line weight; the boundary mask is dilated a
little first because two independently produced maps never align perfectly.

Segmentation and soft-edge extraction are external model backends. When no
soft-edge backend is configured, a built-in gradient-magnitude detector stands
in and the scaffold is flagged accordingly in its metadata.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy import ndimage

from .images import la_to_png, png_to_array

GRADIENT_FALLBACK = "fallback:gradient"


@dataclass
class LabelMap:
    """Per-pixel region identifiers (small non-negative integers)."""

    labels: np.ndarray  # (H, W) integer array

    def __post_init__(self) -> None:
        if self.labels.ndim != 2:
            raise ValueError(f"label map must be 2-D, got shape {self.labels.shape}")

    @property
    def shape(self) -> tuple[int, int]:
        return self.labels.shape  # type: ignore[return-value]


@dataclass
class BoundaryMask:
    """Binary mask; True marks pixels on an inter-region boundary."""

    pixels: np.ndarray  # (H, W) bool

    @property
    def shape(self) -> tuple[int, int]:
        return self.pixels.shape  # type: ignore[return-value]


@dataclass
class SoftEdgeMap:
    """Edge intensities in [0, 1]; varying values carry the line weight."""

    pixels: np.ndarray  # (H, W) float

    @property
    def shape(self) -> tuple[int, int]:
        return self.pixels.shape  # type: ignore[return-value]


@dataclass
class Scaffold:
    """Sketch underlay: kept soft-edge intensities plus a global opacity."""

    intensity: np.ndarray  # (H, W) float in [0, 1]
    alpha: float = 0.3
    meta: dict = field(default_factory=dict)

    @property
    def support(self) -> np.ndarray:
        return self.intensity > 0

    def to_png(self) -> bytes:
        """Encode as grayscale-with-alpha PNG: black lines, alpha = intensity.

        The global ``alpha`` is not baked in; the client composites with it so
        the underlay opacity stays adjustable without re-encoding.
        """
        a = np.clip(np.rint(self.intensity * 255.0), 0, 255).astype(np.uint8)
        return la_to_png(np.zeros_like(a), a)

    @classmethod
    def from_png(cls, data: bytes, alpha: float = 0.3) -> "Scaffold":
        arr = png_to_array(data)
        if arr.ndim != 3 or arr.shape[2] != 2:
            raise ValueError("expected a grayscale-with-alpha PNG")
        return cls(intensity=arr[..., 1].astype(np.float64) / 255.0, alpha=alpha)


@dataclass(frozen=True)
class ScaffoldConfig:
    """Tolerance and presentation knobs for scaffold extraction."""

    dilation_radius: int = 2
    underlay_alpha: float = 0.3

    def __post_init__(self) -> None:
        if self.dilation_radius < 0:
            raise ValueError("dilation radius must be >= 0")
        if not 0.0 <= self.underlay_alpha <= 1.0:
            raise ValueError("underlay alpha must lie in [0, 1]")


def extract_boundaries(label_map: LabelMap) -> BoundaryMask:
    """Mark every pixel with at least one 4-neighbor of a different label.

    Both sides of an edge are marked, so the mask is invariant under any
    relabeling permutation and symmetric between adjacent regions.
    """
    labels = label_map.labels
    if labels.size == 0:
        raise ValueError("label map is empty")
    out = np.zeros(labels.shape, dtype=bool)
    diff_h = labels[:, 1:] != labels[:, :-1]
    out[:, 1:] |= diff_h
    out[:, :-1] |= diff_h
    diff_v = labels[1:, :] != labels[:-1, :]
    out[1:, :] |= diff_v
    out[:-1, :] |= diff_v
    return BoundaryMask(pixels=out)


def dilate(mask: np.ndarray, radius: int) -> np.ndarray:
    """Binary dilation with a (2r+1) x (2r+1) square structuring element."""
    if radius < 0:
        raise ValueError("radius must be >= 0")
    if radius == 0:
        return mask.copy()
    footprint = np.ones((2 * radius + 1, 2 * radius + 1), dtype=bool)
    return ndimage.binary_dilation(mask, structure=footprint)


def intersect(
    boundary: BoundaryMask,
    soft_edges: SoftEdgeMap,
    dilation_radius: int = 2,
    alpha: float = 0.3,
) -> Scaffold:
    """Keep soft-edge intensities inside the dilated boundary mask, zero outside.

    Intensities are preserved exactly (never binarized); the dilation gives a
    small alignment tolerance between the two independently produced maps.
    """
    if boundary.shape != soft_edges.shape:
        raise ValueError(
            f"dimension mismatch: boundary {boundary.shape} vs soft edges {soft_edges.shape}"
        )
    gate = dilate(boundary.pixels, dilation_radius)
    kept = np.where(gate, soft_edges.pixels, 0.0)
    return Scaffold(intensity=kept, alpha=alpha)


def gradient_soft_edges(design: np.ndarray) -> SoftEdgeMap:
    """Classical fallback: normalized Sobel gradient magnitude of the design."""
    if design.ndim == 3:
        gray = design.astype(np.float64).mean(axis=2)
    else:
        gray = design.astype(np.float64)
    gx = ndimage.sobel(gray, axis=1)
    gy = ndimage.sobel(gray, axis=0)
    mag = np.hypot(gx, gy)
    peak = mag.max()
    if peak > 0:
        mag /= peak
    return SoftEdgeMap(pixels=mag)


def make_scaffold(
    design: np.ndarray,
    segmentation,
    soft_edge=None,
    config: ScaffoldConfig | None = None,
) -> Scaffold:
    """Run the full design-to-sketch pipeline on one design image.

    ``segmentation`` must provide ``segment(design) -> LabelMap`` and
    ``soft_edge`` (optional) ``soft_edges(design) -> SoftEdgeMap``. Backend
    errors propagate to the caller, which keeps the previous scaffold on
    display and records the failure.
    """
    config = config or ScaffoldConfig()
    if design.size == 0:
        raise ValueError("design image is empty")
    label_map = segmentation.segment(design)
    if label_map.shape != design.shape[:2]:
        raise ValueError(
            f"segmentation returned {label_map.shape}, design is {design.shape[:2]}"
        )
    meta = {"soft_edge_source": "backend"}
    if soft_edge is not None:
        edges = soft_edge.soft_edges(design)
    else:
        edges = gradient_soft_edges(design)
        meta["soft_edge_source"] = GRADIENT_FALLBACK
    if edges.shape != design.shape[:2]:
        raise ValueError(
            f"soft-edge map is {edges.shape}, design is {design.shape[:2]}"
        )
    boundary = extract_boundaries(label_map)
    scaffold = intersect(boundary, edges, config.dilation_radius, config.underlay_alpha)
    scaffold.meta.update(meta)
    return scaffold
