"""Independent brute-force oracles used to verify the image pipeline.

Everything here is deliberately slow and obvious: explicit per-pixel loops
(or plain array shifts for the tolerance helpers), no reuse of the library's
vectorized code paths, so the tests check the implementation against an
independent route.
"""

from __future__ import annotations

import numpy as np


def boundary_oracle(labels: np.ndarray) -> np.ndarray:
    """Pixel-by-pixel 4-neighbor check; both sides of an edge marked."""
    h, w = labels.shape
    out = np.zeros((h, w), dtype=bool)
    for y in range(h):
        for x in range(w):
            for dy, dx in ((-1, 0), (1, 0), (0, -1), (0, 1)):
                ny, nx = y + dy, x + dx
                if 0 <= ny < h and 0 <= nx < w and labels[ny, nx] != labels[y, x]:
                    out[y, x] = True
                    break
    return out


def dilate_oracle(mask: np.ndarray, radius: int) -> np.ndarray:
    """Square-window dilation by scanning every pixel's neighborhood."""
    h, w = mask.shape
    out = np.zeros((h, w), dtype=bool)
    for y in range(h):
        for x in range(w):
            found = False
            for ny in range(max(0, y - radius), min(h, y + radius + 1)):
                for nx in range(max(0, x - radius), min(w, x + radius + 1)):
                    if mask[ny, nx]:
                        found = True
                        break
                if found:
                    break
            out[y, x] = found
    return out


def intersect_oracle(
    boundary: np.ndarray, soft: np.ndarray, radius: int
) -> np.ndarray:
    """Per-pixel gated copy of soft-edge intensities."""
    gate = dilate_oracle(boundary, radius)
    h, w = boundary.shape
    out = np.zeros((h, w), dtype=np.float64)
    for y in range(h):
        for x in range(w):
            if gate[y, x]:
                out[y, x] = soft[y, x]
    return out


def dilate_shift(mask: np.ndarray, radius: int) -> np.ndarray:
    """Shift-and-or dilation built on numpy padding only.

    Independent of scipy; used for the raster scaling tolerance check rather
    than exact oracle equality.
    """
    h, w = mask.shape
    out = np.zeros_like(mask, dtype=bool)
    for dy in range(-radius, radius + 1):
        for dx in range(-radius, radius + 1):
            ys = slice(max(0, dy), min(h, h + dy))
            yd = slice(max(0, -dy), min(h, h - dy))
            xs = slice(max(0, dx), min(w, w + dx))
            xd = slice(max(0, -dx), min(w, w - dx))
            out[yd, xd] |= mask[ys, xs]
    return out


def random_label_map(rng: np.random.Generator, max_side: int = 32, max_regions: int = 5):
    """Random small label map: voronoi-ish regions from random seed points."""
    h = int(rng.integers(4, max_side + 1))
    w = int(rng.integers(4, max_side + 1))
    k = int(rng.integers(1, max_regions + 1))
    cy = rng.integers(0, h, size=k)
    cx = rng.integers(0, w, size=k)
    yy, xx = np.mgrid[0:h, 0:w]
    dist = (yy[..., None] - cy) ** 2 + (xx[..., None] - cx) ** 2
    return dist.argmin(axis=-1).astype(np.int32)
