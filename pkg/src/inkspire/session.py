"""Per-session state machine: strokes, tools, iteration history, event log.

A session is one design episode. Strokes accumulate on the canvas; Undo
removes the newest stroke and re-displays the cached iteration for the
resulting stroke count (navigation, never regeneration); Clear empties the
canvas but keeps the evolution history readable; Eraser removes whole strokes
by id; Remix swaps the generation seed while keeping strokes and prompt.

Every mutation appends to an append-only event log whose timestamps are
assigned server-side at receipt (milliseconds since session start,
non-decreasing). The log is the source of truth for analytics and is rich
enough that replaying it reproduces the stroke list exactly.

The active stroke count ``n`` — the number of non-erased strokes currently on
the canvas — is what drives the guidance schedule, so erasing or undoing
relaxes guidance again.
"""

from __future__ import annotations

import random
import time
import uuid
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .guidance import draw_seed

EVENT_KINDS = (
    "stroke_added",
    "stroke_undone",
    "canvas_cleared",
    "stroke_erased",
    "prompt_edited",
    "inspiration_requested",
    "inspiration_selected",
    "generation_started",
    "generation_completed",
    "remix",
)


class SessionError(Exception):
    """Base class for state-machine violations."""


class UnknownSessionError(SessionError):
    pass


class UnknownStrokeError(SessionError):
    pass


class InvalidStrokeError(SessionError):
    pass


@dataclass
class Stroke:
    """An ordered polyline drawn pen-down to pen-up."""

    id: str
    points: list[tuple[float, float]]
    width: float = 3.0
    erased: bool = False

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "points": [[x, y] for x, y in self.points],
            "width": self.width,
            "erased": self.erased,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Stroke":
        return cls(
            id=data["id"],
            points=[(float(x), float(y)) for x, y in data["points"]],
            width=float(data["width"]),
            erased=bool(data.get("erased", False)),
        )


@dataclass
class Iteration:
    """One generation result and the inputs that produced it."""

    index: int
    prompt: str
    seed: int
    stroke_count: int
    guidance: float
    control_image: bytes | None = None  # PNG
    design_image: bytes | None = None  # PNG
    scaffold_image: bytes | None = None  # grayscale-with-alpha PNG

    def to_dict(self) -> dict:
        return {
            "index": self.index,
            "prompt": self.prompt,
            "seed": self.seed,
            "stroke_count": self.stroke_count,
            "guidance": self.guidance,
        }


@dataclass
class Event:
    """One log entry; payload keys depend on the kind."""

    timestamp: int  # ms since session start
    kind: str
    payload: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.kind not in EVENT_KINDS:
            raise ValueError(f"unknown event kind {self.kind!r}")

    def to_dict(self) -> dict:
        return {"timestamp": self.timestamp, "kind": self.kind, "payload": self.payload}

    @classmethod
    def from_dict(cls, data: dict) -> "Event":
        return cls(
            timestamp=int(data["timestamp"]),
            kind=data["kind"],
            payload=dict(data.get("payload", {})),
        )


class Session:
    """One design episode and its full mutable state.

    Not thread-safe by itself: the service serializes all mutations of one
    session and snapshots state for readers.
    """

    def __init__(
        self,
        subject: str,
        concept: str,
        seed: int,
        session_id: str | None = None,
        canvas_size: tuple[int, int] = (512, 512),
        clock: Callable[[], int] | None = None,
    ) -> None:
        if not subject.strip():
            raise SessionError("subject must be non-empty")
        if not concept.strip():
            raise SessionError("concept must be non-empty")
        self.id = session_id or uuid.uuid4().hex
        self.subject = subject.strip()
        self.concept = concept.strip()
        self.inspiration: str | None = None
        self.manual_prompt: str | None = None
        self.strokes: list[Stroke] = []
        self.iterations: list[Iteration] = []
        self.seed = seed
        self.events: list[Event] = []
        self.created_at = int(time.time() * 1000)
        self.canvas_size = canvas_size
        self.current_iteration_index: int | None = None
        self._stroke_counter = 0
        self._t0 = time.monotonic()
        self._clock = clock
        self.on_event: Callable[[Event], None] | None = None

    # -- clock / events -----------------------------------------------------

    def _now_ms(self) -> int:
        if self._clock is not None:
            now = self._clock()
        else:
            now = int((time.monotonic() - self._t0) * 1000)
        if self.events and now < self.events[-1].timestamp:
            now = self.events[-1].timestamp  # keep timestamps non-decreasing
        return now

    def log_event(self, kind: str, payload: dict | None = None) -> Event:
        event = Event(timestamp=self._now_ms(), kind=kind, payload=payload or {})
        self.events.append(event)
        if self.on_event is not None:
            self.on_event(event)
        return event

    # -- derived state --------------------------------------------------------

    @property
    def active_stroke_count(self) -> int:
        """n: non-erased strokes currently on the canvas."""
        return sum(1 for s in self.strokes if not s.erased)

    def active_strokes(self) -> list[Stroke]:
        return [s for s in self.strokes if not s.erased]

    def get_stroke(self, stroke_id: str) -> Stroke:
        for stroke in self.strokes:
            if stroke.id == stroke_id:
                return stroke
        raise UnknownStrokeError(f"no stroke {stroke_id!r} in session {self.id}")

    def find_iteration_for_stroke_count(self, n: int) -> int | None:
        """Most recent cached iteration generated at stroke count ``n``."""
        for iteration in reversed(self.iterations):
            if iteration.stroke_count == n:
                return iteration.index
        return None

    @property
    def effective_prompt_source(self) -> str:
        if self.manual_prompt:
            return "manual"
        if self.inspiration:
            return "inspiration"
        return "subject"

    # -- tools ----------------------------------------------------------------

    def add_stroke(self, points: Sequence[Sequence[float]], width: float = 3.0) -> Stroke:
        """Append a stroke; rejects degenerate or out-of-bounds input."""
        pts = [(float(x), float(y)) for x, y in points]
        if len(pts) < 2:
            raise InvalidStrokeError("a stroke needs at least 2 points")
        if width <= 0:
            raise InvalidStrokeError("stroke width must be positive")
        w, h = self.canvas_size
        for x, y in pts:
            if not (0 <= x <= w and 0 <= y <= h):
                raise InvalidStrokeError(
                    f"point ({x}, {y}) outside canvas bounds {w}x{h}"
                )
        self._stroke_counter += 1
        stroke = Stroke(id=f"s{self._stroke_counter}", points=pts, width=float(width))
        self.strokes.append(stroke)
        self.log_event(
            "stroke_added",
            {
                "stroke_id": stroke.id,
                "points": [[x, y] for x, y in pts],
                "width": stroke.width,
                "stroke_count": self.active_stroke_count,
            },
        )
        return stroke

    def undo(self) -> Stroke | None:
        """Remove the newest stroke and re-display the cached prior iteration.

        On an empty canvas this is a silent no-op: nothing removed, nothing
        logged.
        """
        if not self.strokes:
            return None
        stroke = self.strokes.pop()
        self.current_iteration_index = self.find_iteration_for_stroke_count(
            self.active_stroke_count
        )
        self.log_event(
            "stroke_undone",
            {
                "stroke_id": stroke.id,
                "stroke_count": self.active_stroke_count,
                "restored_iteration": self.current_iteration_index,
            },
        )
        return stroke

    def clear(self) -> int:
        """Remove all strokes; evolution history stays, live scaffold clears."""
        removed = len(self.strokes)
        self.strokes.clear()
        self.current_iteration_index = None
        self.log_event("canvas_cleared", {"removed": removed})
        return removed

    def erase_stroke(self, stroke_id: str) -> Stroke:
        """Mark one stroke erased; it leaves the raster and the count."""
        stroke = self.get_stroke(stroke_id)
        if stroke.erased:
            raise UnknownStrokeError(f"stroke {stroke_id!r} already erased")
        stroke.erased = True
        self.log_event(
            "stroke_erased",
            {"stroke_id": stroke.id, "stroke_count": self.active_stroke_count},
        )
        return stroke

    def remix(self, rng: random.Random) -> int:
        """Replace the seed to break out of the current visual thread."""
        old_seed = self.seed
        self.seed = draw_seed(rng)
        self.log_event("remix", {"old_seed": old_seed, "new_seed": self.seed})
        return self.seed

    def set_manual_prompt(self, text: str) -> None:
        self.manual_prompt = text.strip() or None
        self.log_event("prompt_edited", {"text": text.strip()})

    def select_inspiration(self, label: str) -> None:
        if not label.strip():
            raise SessionError("inspiration label must be non-empty")
        self.inspiration = label.strip()
        self.log_event("inspiration_selected", {"label": self.inspiration})

    # -- iteration history ------------------------------------------------------

    def append_iteration(self, iteration: Iteration) -> None:
        if iteration.index != len(self.iterations):
            raise SessionError(
                f"iteration index {iteration.index} not dense "
                f"(expected {len(self.iterations)})"
            )
        self.iterations.append(iteration)
        self.current_iteration_index = iteration.index

    # -- serialization ------------------------------------------------------------

    def to_dict(self, include_events: bool = True) -> dict:
        doc = {
            "id": self.id,
            "subject": self.subject,
            "concept": self.concept,
            "inspiration": self.inspiration,
            "manual_prompt": self.manual_prompt,
            "seed": self.seed,
            "created_at": self.created_at,
            "canvas": {"width": self.canvas_size[0], "height": self.canvas_size[1]},
            "stroke_counter": self._stroke_counter,
            "current_iteration_index": self.current_iteration_index,
            "strokes": [s.to_dict() for s in self.strokes],
            "iterations": [it.to_dict() for it in self.iterations],
        }
        if include_events:
            doc["events"] = [e.to_dict() for e in self.events]
        return doc

    @classmethod
    def from_dict(cls, data: dict, events: Iterable[dict] | None = None) -> "Session":
        session = cls(
            subject=data["subject"],
            concept=data["concept"],
            seed=int(data["seed"]),
            session_id=data["id"],
            canvas_size=(data["canvas"]["width"], data["canvas"]["height"]),
        )
        session.created_at = int(data["created_at"])
        session.inspiration = data.get("inspiration")
        session.manual_prompt = data.get("manual_prompt")
        session._stroke_counter = int(data.get("stroke_counter", 0))
        session.current_iteration_index = data.get("current_iteration_index")
        session.strokes = [Stroke.from_dict(s) for s in data["strokes"]]
        session.iterations = [
            Iteration(
                index=int(it["index"]),
                prompt=it["prompt"],
                seed=int(it["seed"]),
                stroke_count=int(it["stroke_count"]),
                guidance=float(it["guidance"]),
            )
            for it in data["iterations"]
        ]
        event_dicts = data.get("events") if events is None else events
        session.events = [Event.from_dict(e) for e in (event_dicts or [])]
        if session.events:
            # resume the relative clock past the last recorded timestamp
            session._t0 = time.monotonic() - session.events[-1].timestamp / 1000.0
        return session


def replay_stroke_events(events: Iterable[Event]) -> tuple[list[Stroke], int]:
    """Rebuild the stroke list by replaying the event log.

    Only stroke-affecting kinds participate; the result must match the live
    session's stroke list exactly (event-sourcing round trip).
    """
    strokes: list[Stroke] = []
    for event in events:
        if event.kind == "stroke_added":
            p = event.payload
            strokes.append(
                Stroke(
                    id=p["stroke_id"],
                    points=[(float(x), float(y)) for x, y in p["points"]],
                    width=float(p["width"]),
                )
            )
        elif event.kind == "stroke_undone":
            if strokes:
                strokes.pop()
        elif event.kind == "canvas_cleared":
            strokes.clear()
        elif event.kind == "stroke_erased":
            sid = event.payload["stroke_id"]
            for stroke in strokes:
                if stroke.id == sid:
                    stroke.erased = True
                    break
    n = sum(1 for s in strokes if not s.erased)
    return strokes, n
