"""Config file parsing, defaults, and environment overrides."""

from __future__ import annotations

import pytest

from inkspire.service.config import ServiceConfig, load_config

EXAMPLE = """
guidance:
  base: 8
  span: 5
  decay_base: 0.4
  stroke_divisor: 2
raster:
  width: 256
  height: 256
  stroke_width: 5
scaffold:
  dilation_radius: 1
  underlay_alpha: 0.5
canvas:
  width: 800
  height: 600
prompts:
  template: "a {subject} shaped like {inspiration}"
  template_plain: "a {subject}"
inspirations:
  count: 6
seed: 99
backends:
  t2i:
    endpoint: http://gpu-box:9000/generate
    timeout_ms: 60000
    auth_env: T2I_TOKEN
  soft_edge:
    endpoint: none
  llm:
    endpoint: synthetic
"""


def test_defaults_without_file():
    config = load_config(None, apply_env=False)
    assert config.guidance.base == 7.0
    assert config.raster.width == 512
    assert config.scaffold.dilation_radius == 2
    assert config.inspiration_count == 10
    assert set(config.backends) == {"t2i", "segmentation", "soft_edge", "foreground", "llm"}
    assert all(b.endpoint == "mock" for b in config.backends.values())


def test_yaml_file_parsed(tmp_path):
    path = tmp_path / "config.yaml"
    path.write_text(EXAMPLE, encoding="utf-8")
    config = load_config(path, apply_env=False)
    assert config.guidance.base == 8.0 and config.guidance.span == 5.0
    assert config.raster.stroke_width == 5
    assert config.scaffold.underlay_alpha == 0.5
    assert (config.canvas_width, config.canvas_height) == (800, 600)
    assert config.prompt_template == "a {subject} shaped like {inspiration}"
    assert config.inspiration_count == 6
    assert config.seed == 99
    assert config.backends["t2i"].endpoint == "http://gpu-box:9000/generate"
    assert config.backends["t2i"].timeout_ms == 60_000
    assert config.backends["t2i"].auth_env == "T2I_TOKEN"
    assert config.backends["soft_edge"].endpoint == "none"
    assert config.backends["llm"].endpoint == "synthetic"
    assert config.backends["segmentation"].endpoint == "mock"  # untouched default


def test_env_overrides(tmp_path, monkeypatch):
    path = tmp_path / "config.yaml"
    path.write_text(EXAMPLE, encoding="utf-8")
    monkeypatch.setenv("INKSPIRE_T2I_ENDPOINT", "http://other:1234/gen")
    monkeypatch.setenv("INKSPIRE_SOFT_EDGE_ENDPOINT", "http://edges:1/soft")
    monkeypatch.setenv("INKSPIRE_STORAGE_DIR", str(tmp_path / "store"))
    monkeypatch.setenv("INKSPIRE_SEED", "7")
    config = load_config(path)
    assert config.backends["t2i"].endpoint == "http://other:1234/gen"
    assert config.backends["soft_edge"].endpoint == "http://edges:1/soft"
    assert config.storage_dir == tmp_path / "store"
    assert config.seed == 7


def test_unknown_backend_kind_rejected(tmp_path):
    path = tmp_path / "config.yaml"
    path.write_text("backends:\n  quantum:\n    endpoint: mock\n", encoding="utf-8")
    with pytest.raises(ValueError, match="quantum"):
        load_config(path, apply_env=False)


def test_malformed_section_rejected(tmp_path):
    path = tmp_path / "config.yaml"
    path.write_text("guidance: 17\n", encoding="utf-8")
    with pytest.raises(ValueError):
        load_config(path, apply_env=False)


def test_prompt_rendering_precedence_helpers():
    config = ServiceConfig()
    with_insp = config.render_prompt("car", "tortoise")
    assert with_insp == "a product design of a car inspired by tortoise, clean studio background"
    assert config.render_prompt("car", None) == "a product design of a car, clean studio background"
