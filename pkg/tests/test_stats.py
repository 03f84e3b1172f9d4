"""Log analytics against hand-computed oracles."""

from __future__ import annotations

import pytest

from inkspire.session import Event
from inkspire.stats import compute_log_stats, events_from_jsonl, events_to_jsonl


def ev(ts: int, kind: str, **payload) -> Event:
    return Event(timestamp=ts, kind=kind, payload=payload)


def test_uniform_spacing_mean_gap():
    events = [
        ev(0, "stroke_added", stroke_id="s1"),
        ev(10_000, "stroke_added", stroke_id="s2"),
        ev(20_000, "stroke_added", stroke_id="s3"),
    ]
    stats = compute_log_stats(events)
    assert stats.stroke_count == 3
    assert stats.mean_interstroke_ms == 10_000.0


def test_single_stroke_reports_absent_not_zero():
    stats = compute_log_stats([ev(5_000, "stroke_added", stroke_id="s1")])
    assert stats.stroke_count == 1
    assert stats.mean_interstroke_ms is None
    assert stats.strokes_per_min is None


def test_no_events_at_all():
    stats = compute_log_stats([])
    assert stats.stroke_count == 0
    assert stats.mean_interstroke_ms is None
    assert stats.strokes_per_min is None
    assert stats.prompt_edit_count == 0


def test_twelve_event_fixture_matches_hand_computation():
    # hand-computed: strokes at 5s/15s/25s/45s -> gaps 10s, 10s, 20s
    #   mean gap = 40000/3 ms; span 40s = 2/3 min -> 4 strokes / (2/3) = 6.0/min
    events = [
        ev(1_000, "inspiration_requested", count=10),
        ev(2_000, "inspiration_selected", label="tortoise"),
        ev(5_000, "stroke_added", stroke_id="s1"),
        ev(9_000, "generation_started", job_id=0),
        ev(9_500, "generation_completed", job_id=0, outcome="done"),
        ev(15_000, "stroke_added", stroke_id="s2"),
        ev(18_000, "prompt_edited", text="low poly car"),
        ev(25_000, "stroke_added", stroke_id="s3"),
        ev(26_000, "generation_started", job_id=2),
        ev(26_700, "generation_completed", job_id=2, outcome="done"),
        ev(45_000, "stroke_added", stroke_id="s4"),
        ev(45_100, "generation_started", job_id=3),
    ]
    stats = compute_log_stats(events)
    assert stats.stroke_count == 4
    assert stats.mean_interstroke_ms == 40_000 / 3
    assert stats.strokes_per_min == 6.0
    assert stats.prompt_edit_count == 1


def test_zero_span_strokes_report_absent_rate():
    events = [ev(100, "stroke_added"), ev(100, "stroke_added")]
    stats = compute_log_stats(events)
    assert stats.mean_interstroke_ms == 0.0
    assert stats.strokes_per_min is None


def test_unordered_log_rejected():
    events = [ev(100, "stroke_added"), ev(50, "stroke_added")]
    with pytest.raises(ValueError):
        compute_log_stats(events)


def test_jsonl_round_trip_preserves_events():
    events = [
        ev(0, "stroke_added", stroke_id="s1", points=[[1, 2], [3, 4]], width=3),
        ev(5, "remix", old_seed=1, new_seed=2),
    ]
    text = events_to_jsonl(events)
    assert text.count("\n") == 2  # one event per line
    back = events_from_jsonl(text)
    assert [e.to_dict() for e in back] == [e.to_dict() for e in events]


def test_stats_dict_shape():
    stats = compute_log_stats([ev(0, "stroke_added"), ev(60_000, "stroke_added")])
    doc = stats.to_dict()
    assert doc == {
        "stroke_count": 2,
        "strokes_per_min": 2.0,
        "mean_interstroke_ms": 60_000.0,
        "prompt_edit_count": 0,
    }
