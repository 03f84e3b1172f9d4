"""Remote HTTP+JSON adapters; image payloads travel as base64 PNG.

Wire shapes (one POST per call):

    t2i           {prompt, control_image_png_b64, adherence, seed, width,
                   height, extra}                 -> {image_png_b64}
    segmentation  {image_png_b64}                 -> {label_map_png_b64}
    soft_edge     {image_png_b64}                 -> {soft_edge_png_b64}
    foreground    {image_png_b64}                 -> {mask_png_b64}
    llm           {prompt}                        -> {text}

Label maps are single-channel PNG with label = pixel value; soft-edge and
foreground masks are 8-bit grayscale scaled to [0, 1] on decode. The adherence
scalar is forwarded as the named parameter ``adherence``; which upstream knob
it drives (classifier-free guidance, conditioning strength, ...) is the
serving side's documented choice.
"""

from __future__ import annotations

import base64
import os

import httpx
import numpy as np

from ..images import png_to_gray, png_to_rgb, rgb_to_png
from ..scaffold import LabelMap, SoftEdgeMap
from .base import BackendConfig, BackendError, BackendTimeout, GenerationRequest

_BODY_EXCERPT = 200


class _HttpAdapter:
    def __init__(self, config: BackendConfig, transport: httpx.BaseTransport | None = None) -> None:
        self.config = config
        headers = {}
        if config.auth_env:
            token = os.environ.get(config.auth_env)
            if token:
                headers["Authorization"] = f"Bearer {token}"
        self._client = httpx.Client(
            timeout=config.timeout_ms / 1000.0,
            headers=headers,
            transport=transport,
        )

    def _post(self, payload: dict) -> dict:
        kind = self.config.kind
        try:
            response = self._client.post(self.config.endpoint, json=payload)
        except httpx.TimeoutException as exc:
            raise BackendTimeout(kind, f"timeout calling {self.config.endpoint}: {exc}") from exc
        except httpx.HTTPError as exc:
            raise BackendError(kind, f"transport error: {exc}") from exc
        if response.status_code // 100 != 2:
            raise BackendError(
                kind,
                f"HTTP {response.status_code} from {self.config.endpoint}",
                status=response.status_code,
                body_excerpt=response.text[:_BODY_EXCERPT],
            )
        try:
            return response.json()
        except ValueError as exc:
            raise BackendError(
                kind,
                "non-JSON response body",
                status=response.status_code,
                body_excerpt=response.text[:_BODY_EXCERPT],
            ) from exc

    def _field(self, body: dict, name: str) -> str:
        if name not in body:
            raise BackendError(self.config.kind, f"response missing field {name!r}")
        return body[name]

    def close(self) -> None:
        self._client.close()


def _b64(data: bytes) -> str:
    return base64.b64encode(data).decode("ascii")


def _unb64(kind: str, text: str) -> bytes:
    try:
        return base64.b64decode(text)
    except Exception as exc:
        raise BackendError(kind, f"invalid base64 payload: {exc}") from exc


class HttpTextToImage(_HttpAdapter):
    def generate(self, request: GenerationRequest) -> np.ndarray:
        body = self._post(
            {
                "prompt": request.prompt,
                "control_image_png_b64": _b64(request.control_image.to_png()),
                "adherence": request.adherence,
                "seed": request.seed,
                "width": request.width,
                "height": request.height,
                "extra": request.extra,
            }
        )
        image = png_to_rgb(_unb64("t2i", self._field(body, "image_png_b64")))
        if image.shape[:2] != (request.height, request.width):
            raise BackendError(
                "t2i",
                f"size mismatch: requested {request.height}x{request.width}, "
                f"got {image.shape[0]}x{image.shape[1]}",
            )
        return image


class HttpSegmentation(_HttpAdapter):
    def segment(self, design: np.ndarray) -> LabelMap:
        body = self._post({"image_png_b64": _b64(rgb_to_png(design))})
        labels = png_to_gray(_unb64("segmentation", self._field(body, "label_map_png_b64")))
        return LabelMap(labels=labels.astype(np.int32))


class HttpSoftEdge(_HttpAdapter):
    def soft_edges(self, design: np.ndarray) -> SoftEdgeMap:
        body = self._post({"image_png_b64": _b64(rgb_to_png(design))})
        gray = png_to_gray(_unb64("soft_edge", self._field(body, "soft_edge_png_b64")))
        return SoftEdgeMap(pixels=gray.astype(np.float64) / 255.0)


class HttpForeground(_HttpAdapter):
    def foreground_mask(self, design: np.ndarray) -> np.ndarray:
        body = self._post({"image_png_b64": _b64(rgb_to_png(design))})
        gray = png_to_gray(_unb64("foreground", self._field(body, "mask_png_b64")))
        return gray.astype(np.float64) / 255.0


class HttpLLM(_HttpAdapter):
    def complete(self, prompt: str) -> str:
        body = self._post({"prompt": prompt})
        text = self._field(body, "text")
        if not isinstance(text, str):
            raise BackendError("llm", "response field 'text' is not a string")
        return text


__all__ = [
    "HttpTextToImage",
    "HttpSegmentation",
    "HttpSoftEdge",
    "HttpForeground",
    "HttpLLM",
]
