"""Interaction-log analytics and JSONL import/export.

Sketching-behavior statistics are computed over ``stroke_added`` events:
total strokes drawn, sketching frequency (strokes per minute over the span
from first to last stroke), and the mean gap between consecutive strokes.
Quantities that need at least two stroke events are reported as absent —
never as zero — when the log is too short.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from typing import Iterable

from .session import Event

MS_PER_MIN = 60_000.0


@dataclass(frozen=True)
class LogStats:
    stroke_count: int
    strokes_per_min: float | None
    mean_interstroke_ms: float | None
    prompt_edit_count: int

    def to_dict(self) -> dict:
        return asdict(self)


def compute_log_stats(events: Iterable[Event]) -> LogStats:
    """Descriptive statistics over a time-ordered event log."""
    stroke_ts: list[int] = []
    prompt_edits = 0
    last_ts: int | None = None
    for event in events:
        if last_ts is not None and event.timestamp < last_ts:
            raise ValueError("event log is not time-ordered")
        last_ts = event.timestamp
        if event.kind == "stroke_added":
            stroke_ts.append(event.timestamp)
        elif event.kind == "prompt_edited":
            prompt_edits += 1

    mean_gap: float | None = None
    per_min: float | None = None
    if len(stroke_ts) >= 2:
        gaps = [b - a for a, b in zip(stroke_ts, stroke_ts[1:])]
        mean_gap = sum(gaps) / len(gaps)
        span_ms = stroke_ts[-1] - stroke_ts[0]  # active sketching duration
        if span_ms > 0:
            per_min = len(stroke_ts) / (span_ms / MS_PER_MIN)
    return LogStats(
        stroke_count=len(stroke_ts),
        strokes_per_min=per_min,
        mean_interstroke_ms=mean_gap,
        prompt_edit_count=prompt_edits,
    )


def events_to_jsonl(events: Iterable[Event]) -> str:
    """One event per line, UTF-8 JSON."""
    return "".join(json.dumps(e.to_dict(), ensure_ascii=False) + "\n" for e in events)


def events_from_jsonl(text: str) -> list[Event]:
    events = []
    for line in text.splitlines():
        line = line.strip()
        if line:
            events.append(Event.from_dict(json.loads(line)))
    return events
