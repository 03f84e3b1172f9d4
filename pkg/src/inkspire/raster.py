"""Stroke rasterization: turn the live stroke list into the control image.

The control image conditions the text-to-image backend. Rasterization is
deliberately boring: integer Bresenham segments stamped with a square brush,
no anti-aliasing, so identical stroke lists yield byte-identical images and
golden-image tests stay stable. Ink is stored as full intensity (255) on a
zero background; polarity is applied only at PNG-encode time because scribble
conditioning conventions differ between model servers.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .images import gray_to_png, png_to_gray

INK = 255


@dataclass(frozen=True)
class RasterConfig:
    """Control-image geometry and brush parameters."""

    width: int = 512
    height: int = 512
    stroke_width: int = 3
    ink_on_white: bool = True  # PNG transport polarity, not the in-memory layout

    def __post_init__(self) -> None:
        if self.width <= 0 or self.height <= 0:
            raise ValueError("control image dimensions must be positive")
        if self.stroke_width < 1:
            raise ValueError("stroke width must be >= 1 px")


@dataclass
class ControlImage:
    """Single-channel raster; ink pixels carry full intensity on empty background."""

    pixels: np.ndarray  # (H, W) uint8, values in {0, INK}

    @property
    def width(self) -> int:
        return int(self.pixels.shape[1])

    @property
    def height(self) -> int:
        return int(self.pixels.shape[0])

    @property
    def ink_mask(self) -> np.ndarray:
        return self.pixels > 0

    def to_png(self, ink_on_white: bool = True) -> bytes:
        """Encode for transport; default polarity is black ink on white."""
        if ink_on_white:
            return gray_to_png(INK - self.pixels)
        return gray_to_png(self.pixels)

    @classmethod
    def from_png(cls, data: bytes, ink_on_white: bool = True) -> "ControlImage":
        arr = png_to_gray(data)
        if ink_on_white:
            arr = INK - arr
        return cls(pixels=np.where(arr > 127, INK, 0).astype(np.uint8))


def _bresenham(x0: int, y0: int, x1: int, y1: int) -> Iterable[tuple[int, int]]:
    """Integer line from (x0, y0) to (x1, y1), inclusive of both endpoints."""
    dx = abs(x1 - x0)
    dy = -abs(y1 - y0)
    sx = 1 if x0 < x1 else -1
    sy = 1 if y0 < y1 else -1
    err = dx + dy
    x, y = x0, y0
    while True:
        yield x, y
        if x == x1 and y == y1:
            return
        e2 = 2 * err
        if e2 >= dy:
            err += dy
            x += sx
        if e2 <= dx:
            err += dx
            y += sy


def _stamp(grid: np.ndarray, x: int, y: int, lo: int, hi: int) -> None:
    h, w = grid.shape
    y0, y1 = max(0, y + lo), min(h, y + hi + 1)
    x0, x1 = max(0, x + lo), min(w, x + hi + 1)
    if y0 < y1 and x0 < x1:
        grid[y0:y1, x0:x1] = INK


def rasterize(
    strokes: Iterable,
    canvas_size: tuple[int, int],
    config: RasterConfig | None = None,
) -> ControlImage:
    """Draw all non-erased strokes into a fresh control image.

    Stroke points are given in canvas coordinates (origin top-left) and are
    scaled to the configured control-image resolution; a point maps to the
    pixel cell containing it (floor quantization), which keeps rasterizations
    at different resolutions aligned. Each polyline segment is drawn with a
    square brush of side ``stroke_width`` centered on the Bresenham line
    (square caps). Zero active strokes produce a valid empty image; generation
    is still permitted on it at low guidance.
    """
    config = config or RasterConfig()
    canvas_w, canvas_h = canvas_size
    if canvas_w <= 0 or canvas_h <= 0:
        raise ValueError("canvas dimensions must be positive")
    grid = np.zeros((config.height, config.width), dtype=np.uint8)
    sx = config.width / canvas_w
    sy = config.height / canvas_h
    brush = config.stroke_width
    lo, hi = -((brush - 1) // 2), brush // 2

    for stroke in strokes:
        if getattr(stroke, "erased", False):
            continue
        points: Sequence[tuple[float, float]] = stroke.points
        scaled = [
            (
                min(config.width - 1, max(0, int(px * sx))),
                min(config.height - 1, max(0, int(py * sy))),
            )
            for px, py in points
        ]
        for (x0, y0), (x1, y1) in zip(scaled, scaled[1:]):
            for x, y in _bresenham(x0, y0, x1, y1):
                _stamp(grid, x, y, lo, hi)
    return ControlImage(pixels=grid)
