"""PNG encode/decode helpers and alpha compositing shared by the pipeline."""

from __future__ import annotations

import io

import numpy as np
from PIL import Image


def rgb_to_png(pixels: np.ndarray) -> bytes:
    """Encode an (H, W, 3) uint8 array as PNG bytes."""
    if pixels.ndim != 3 or pixels.shape[2] != 3:
        raise ValueError(f"expected (H, W, 3) array, got {pixels.shape}")
    buf = io.BytesIO()
    Image.fromarray(pixels.astype(np.uint8), mode="RGB").save(buf, format="PNG")
    return buf.getvalue()


def gray_to_png(pixels: np.ndarray) -> bytes:
    """Encode an (H, W) uint8 array as 8-bit grayscale PNG bytes."""
    if pixels.ndim != 2:
        raise ValueError(f"expected (H, W) array, got {pixels.shape}")
    buf = io.BytesIO()
    Image.fromarray(pixels.astype(np.uint8), mode="L").save(buf, format="PNG")
    return buf.getvalue()


def la_to_png(luminance: np.ndarray, alpha: np.ndarray) -> bytes:
    """Encode grayscale-with-alpha (two (H, W) uint8 arrays) as PNG bytes."""
    if luminance.shape != alpha.shape or luminance.ndim != 2:
        raise ValueError("luminance and alpha must be matching (H, W) arrays")
    stacked = np.stack([luminance, alpha], axis=-1).astype(np.uint8)
    buf = io.BytesIO()
    Image.fromarray(stacked, mode="LA").save(buf, format="PNG")
    return buf.getvalue()


def png_to_array(data: bytes) -> np.ndarray:
    """Decode PNG bytes to a uint8 array in the file's own mode (L, LA, RGB...)."""
    with Image.open(io.BytesIO(data)) as im:
        return np.asarray(im).copy()


def png_to_rgb(data: bytes) -> np.ndarray:
    """Decode PNG bytes to an (H, W, 3) uint8 array, converting if needed."""
    with Image.open(io.BytesIO(data)) as im:
        return np.asarray(im.convert("RGB")).copy()


def png_to_gray(data: bytes) -> np.ndarray:
    """Decode PNG bytes to an (H, W) uint8 array, converting if needed."""
    with Image.open(io.BytesIO(data)) as im:
        return np.asarray(im.convert("L")).copy()


def composite_over_white(design: np.ndarray, alpha_mask: np.ndarray) -> np.ndarray:
    """Blend ``design`` over a white background using a soft foreground mask.

    ``alpha_mask`` is (H, W) in [0, 1]; 1 keeps the design pixel, 0 turns it
    white. Used to drop generated backgrounds before scaffold extraction.
    """
    if alpha_mask.shape != design.shape[:2]:
        raise ValueError(
            f"mask shape {alpha_mask.shape} does not match design {design.shape[:2]}"
        )
    a = np.clip(alpha_mask.astype(np.float64), 0.0, 1.0)[..., None]
    out = design.astype(np.float64) * a + 255.0 * (1.0 - a)
    return np.clip(np.rint(out), 0, 255).astype(np.uint8)
