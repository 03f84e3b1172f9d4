"""Service configuration: YAML file plus environment-variable overrides.

Schema (all keys optional; defaults shown):

    guidance:      {base: 7, span: 4, decay_base: 0.5, stroke_divisor: 3}
    raster:        {width: 512, height: 512, stroke_width: 3}
    scaffold:      {dilation_radius: 2, underlay_alpha: 0.3}
    canvas:        {width: 512, height: 512}
    prompts:
      template:        "a product design of a {subject} inspired by
                        {inspiration}, clean studio background"
      template_plain:  "a product design of a {subject}, clean studio background"
      template_dir:    null            # custom prompt-template directory
    inspirations:  {count: 10}
    storage:       {dir: null}         # null = in-memory only
    seed:          null                # RNG seed for per-session generation seeds
    backends:
      t2i:          {endpoint: mock, timeout_ms: 30000, auth_env: null, options: {}}
      segmentation: {endpoint: mock, ...}
      soft_edge:    {endpoint: mock, ...}   # "none" selects the gradient fallback
      foreground:   {endpoint: mock, ...}
      llm:          {endpoint: mock, ...}   # "synthetic" = fixture-free demo LLM

Environment overrides (applied after the file): INKSPIRE_T2I_ENDPOINT,
INKSPIRE_SEGMENTATION_ENDPOINT, INKSPIRE_SOFT_EDGE_ENDPOINT,
INKSPIRE_FOREGROUND_ENDPOINT, INKSPIRE_LLM_ENDPOINT, INKSPIRE_STORAGE_DIR,
INKSPIRE_SEED.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from pathlib import Path

import yaml

from ..backends.base import BACKEND_KINDS, BackendConfig
from ..guidance import GuidanceSchedule
from ..raster import RasterConfig
from ..scaffold import ScaffoldConfig

DEFAULT_PROMPT_TEMPLATE = (
    "a product design of a {subject} inspired by {inspiration}, clean studio background"
)
DEFAULT_PROMPT_TEMPLATE_PLAIN = "a product design of a {subject}, clean studio background"

_ENDPOINT_ENV = {kind: f"INKSPIRE_{kind.upper()}_ENDPOINT" for kind in BACKEND_KINDS}


@dataclass
class ServiceConfig:
    guidance: GuidanceSchedule = field(default_factory=GuidanceSchedule)
    raster: RasterConfig = field(default_factory=RasterConfig)
    scaffold: ScaffoldConfig = field(default_factory=ScaffoldConfig)
    canvas_width: int = 512
    canvas_height: int = 512
    prompt_template: str = DEFAULT_PROMPT_TEMPLATE
    prompt_template_plain: str = DEFAULT_PROMPT_TEMPLATE_PLAIN
    template_dir: Path | None = None
    inspiration_count: int = 10
    storage_dir: Path | None = None
    seed: int | None = None
    backends: dict[str, BackendConfig] = field(default_factory=dict)

    def __post_init__(self) -> None:
        for kind in BACKEND_KINDS:
            self.backends.setdefault(kind, BackendConfig(kind=kind))

    def render_prompt(self, subject: str, inspiration: str | None) -> str:
        if inspiration:
            return self.prompt_template.format(subject=subject, inspiration=inspiration)
        return self.prompt_template_plain.format(subject=subject)


def _section(data: dict, name: str) -> dict:
    value = data.get(name) or {}
    if not isinstance(value, dict):
        raise ValueError(f"config section {name!r} must be a mapping")
    return value


def load_config(path: Path | str | None = None, apply_env: bool = True) -> ServiceConfig:
    """Parse the YAML config file (if any) and apply environment overrides."""
    data: dict = {}
    if path is not None:
        raw = Path(path).read_text(encoding="utf-8")
        data = yaml.safe_load(raw) or {}
        if not isinstance(data, dict):
            raise ValueError("config root must be a mapping")

    guidance = GuidanceSchedule(**_section(data, "guidance"))
    raster = RasterConfig(**_section(data, "raster"))
    scaffold = ScaffoldConfig(**_section(data, "scaffold"))
    canvas = _section(data, "canvas")
    prompts = _section(data, "prompts")
    inspirations = _section(data, "inspirations")
    storage = _section(data, "storage")

    backends = {}
    for kind, raw_backend in _section(data, "backends").items():
        if kind not in BACKEND_KINDS:
            raise ValueError(f"unknown backend kind {kind!r} in config")
        backends[kind] = BackendConfig(kind=kind, **(raw_backend or {}))

    config = ServiceConfig(
        guidance=guidance,
        raster=raster,
        scaffold=scaffold,
        canvas_width=int(canvas.get("width", 512)),
        canvas_height=int(canvas.get("height", 512)),
        prompt_template=prompts.get("template", DEFAULT_PROMPT_TEMPLATE),
        prompt_template_plain=prompts.get("template_plain", DEFAULT_PROMPT_TEMPLATE_PLAIN),
        template_dir=Path(prompts["template_dir"]) if prompts.get("template_dir") else None,
        inspiration_count=int(inspirations.get("count", 10)),
        storage_dir=Path(storage["dir"]) if storage.get("dir") else None,
        seed=int(data["seed"]) if data.get("seed") is not None else None,
        backends=backends,
    )
    if apply_env:
        _apply_env(config)
    return config


def _apply_env(config: ServiceConfig) -> None:
    for kind, var in _ENDPOINT_ENV.items():
        endpoint = os.environ.get(var)
        if endpoint:
            config.backends[kind].endpoint = endpoint
    storage = os.environ.get("INKSPIRE_STORAGE_DIR")
    if storage:
        config.storage_dir = Path(storage)
    seed = os.environ.get("INKSPIRE_SEED")
    if seed:
        config.seed = int(seed)
