"""Durable session storage: directory per session, JSON + PNG blobs.

Layout under the store root:

    <session-id>/
        session.json     # metadata snapshot (strokes, iteration records, seed)
        events.jsonl     # append-only event log, one JSON object per line
        blobs/
            iter_00000_control.png
            iter_00000_design.png
            iter_00000_scaffold.png

Metadata writes are atomic (tmp file + rename). Loading is forgiving but
loud: a corrupt session.json skips the whole session with an error log, a
corrupt event line is dropped with a warning, and an unreadable or truncated
blob marks just that image missing — never silent data loss, never a crash.
"""

from __future__ import annotations

import io
import json
import logging
from pathlib import Path

from PIL import Image

from ..session import Event, Session

logger = logging.getLogger(__name__)

_BLOB_KINDS = ("control", "design", "scaffold")


class SessionStore:
    def __init__(self, root: Path | str) -> None:
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)

    # -- paths ----------------------------------------------------------------

    def _session_dir(self, session_id: str) -> Path:
        return self.root / session_id

    def _blob_path(self, session_id: str, index: int, kind: str) -> Path:
        return self._session_dir(session_id) / "blobs" / f"iter_{index:05d}_{kind}.png"

    # -- writing ----------------------------------------------------------------

    def save_session(self, session: Session) -> None:
        """Write the metadata snapshot and any blobs not yet on disk."""
        directory = self._session_dir(session.id)
        (directory / "blobs").mkdir(parents=True, exist_ok=True)
        for iteration in session.iterations:
            for kind in _BLOB_KINDS:
                data: bytes | None = getattr(iteration, f"{kind}_image")
                if data is None:
                    continue
                path = self._blob_path(session.id, iteration.index, kind)
                if not path.exists():
                    path.write_bytes(data)
        doc = session.to_dict(include_events=False)
        tmp = directory / "session.json.tmp"
        tmp.write_text(json.dumps(doc, ensure_ascii=False, indent=2), encoding="utf-8")
        tmp.replace(directory / "session.json")

    def append_event(self, session_id: str, event: Event) -> None:
        directory = self._session_dir(session_id)
        directory.mkdir(parents=True, exist_ok=True)
        with open(directory / "events.jsonl", "a", encoding="utf-8") as fh:
            fh.write(json.dumps(event.to_dict(), ensure_ascii=False) + "\n")

    # -- loading ---------------------------------------------------------------

    def _load_blob(self, session_id: str, index: int, kind: str) -> bytes | None:
        path = self._blob_path(session_id, index, kind)
        if not path.exists():
            return None
        data = path.read_bytes()
        try:
            with Image.open(io.BytesIO(data)) as im:
                im.load()
        except Exception:
            logger.warning(
                "corrupt blob %s for session %s; iteration %d %s image marked missing",
                path.name, session_id, index, kind,
            )
            return None
        return data

    def _load_events(self, session_id: str) -> list[dict]:
        path = self._session_dir(session_id) / "events.jsonl"
        if not path.exists():
            return []
        events = []
        for lineno, line in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
            line = line.strip()
            if not line:
                continue
            try:
                events.append(json.loads(line))
            except json.JSONDecodeError:
                logger.warning(
                    "skipping corrupt event line %d for session %s", lineno, session_id
                )
        return events

    def load_session(self, session_id: str) -> Session | None:
        """Restore one session; None (with an error log) when unreadable."""
        path = self._session_dir(session_id) / "session.json"
        try:
            doc = json.loads(path.read_text(encoding="utf-8"))
            session = Session.from_dict(doc, events=self._load_events(session_id))
        except Exception:
            logger.error(
                "corrupt session record %s: skipped on restore (data retained on disk)",
                session_id, exc_info=True,
            )
            return None
        for iteration in session.iterations:
            iteration.control_image = self._load_blob(session_id, iteration.index, "control")
            iteration.design_image = self._load_blob(session_id, iteration.index, "design")
            iteration.scaffold_image = self._load_blob(session_id, iteration.index, "scaffold")
        return session

    def load_all(self) -> list[Session]:
        sessions = []
        for entry in sorted(self.root.iterdir()) if self.root.exists() else []:
            if not entry.is_dir() or not (entry / "session.json").exists():
                continue
            session = self.load_session(entry.name)
            if session is not None:
                sessions.append(session)
        return sessions
