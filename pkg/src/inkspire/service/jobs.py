"""Per-session generation jobs with stale-request supersession.

Every stroke (and inspiration pick, remix, erase...) schedules a generation
job. Jobs for one session run strictly one at a time; scheduling a new job
marks every older pending or running job of that session superseded. A
superseded pending job is never started, and a superseded running job's
result is discarded at the commit point — the iterations list never contains
output from a superseded job. Job ids increase monotonically per session, so
"newer" is well defined.
"""

from __future__ import annotations

import logging
import threading
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable

from ..backends.base import GenerationRequest

logger = logging.getLogger(__name__)


class JobState(str, Enum):
    PENDING = "pending"
    RUNNING = "running"
    SUPERSEDED = "superseded"
    DONE = "done"
    FAILED = "failed"


@dataclass
class GenerationJob:
    session_id: str
    job_id: int
    request: GenerationRequest
    stroke_count: int
    guidance: float
    state: JobState = JobState.PENDING
    error: str | None = None
    iteration_index: int | None = None
    warnings: list[str] = field(default_factory=list)


class SessionJobQueue:
    """Single-worker queue for one session; owns that session's job records."""

    def __init__(
        self,
        session_id: str,
        execute: Callable[[GenerationJob], None],
    ) -> None:
        self.session_id = session_id
        self._execute = execute
        self._cond = threading.Condition()
        self._jobs: dict[int, GenerationJob] = {}
        self._next_id = 0
        self._pending: list[int] = []
        self._running: int | None = None
        self._stopped = False
        self._thread: threading.Thread | None = None

    def _ensure_worker(self) -> None:
        if self._thread is None or not self._thread.is_alive():
            self._thread = threading.Thread(
                target=self._run_loop, name=f"gen-{self.session_id[:8]}", daemon=True
            )
            self._thread.start()

    def schedule(self, build_request: Callable[[int], GenerationJob]) -> GenerationJob:
        """Create the next job, superseding all older unfinished jobs."""
        with self._cond:
            job_id = self._next_id
            self._next_id += 1
            job = build_request(job_id)
            assert job.job_id == job_id
            for other in self._jobs.values():
                if other.state in (JobState.PENDING, JobState.RUNNING):
                    other.state = JobState.SUPERSEDED
                    logger.info(
                        "job superseded session=%s job=%d by=%d",
                        self.session_id, other.job_id, job_id,
                    )
            self._jobs[job_id] = job
            self._pending.append(job_id)
            self._ensure_worker()
            self._cond.notify_all()
        return job

    def _next_runnable(self) -> GenerationJob | None:
        while self._pending:
            job = self._jobs[self._pending.pop(0)]
            if job.state is JobState.PENDING:
                return job
        return None

    def _run_loop(self) -> None:
        while True:
            with self._cond:
                job = self._next_runnable()
                if job is None:
                    if self._stopped:
                        return
                    self._cond.wait(timeout=0.5)
                    continue
                job.state = JobState.RUNNING
                self._running = job.job_id
            try:
                self._execute(job)
            except Exception:
                logger.exception(
                    "job executor crashed session=%s job=%d", self.session_id, job.job_id
                )
                with self._cond:
                    if job.state is JobState.RUNNING:
                        job.state = JobState.FAILED
                        job.error = "internal executor error"
            finally:
                with self._cond:
                    self._running = None
                    self._cond.notify_all()

    def finish(self, job: GenerationJob, state: JobState, error: str | None = None) -> bool:
        """Commit a terminal state; returns False when the job was superseded."""
        with self._cond:
            if job.state is JobState.SUPERSEDED:
                return False
            job.state = state
            job.error = error
            return True

    def supersede_all(self) -> int:
        """Invalidate every unfinished job (canvas state made them stale)."""
        count = 0
        with self._cond:
            for job in self._jobs.values():
                if job.state in (JobState.PENDING, JobState.RUNNING):
                    job.state = JobState.SUPERSEDED
                    count += 1
            if count:
                self._cond.notify_all()
        return count

    def is_superseded(self, job: GenerationJob) -> bool:
        with self._cond:
            return job.state is JobState.SUPERSEDED

    def wait_idle(self, timeout: float | None = None) -> bool:
        """Block until no job is pending or running; True if idle was reached."""
        with self._cond:
            return self._cond.wait_for(
                lambda: self._running is None
                and not any(
                    self._jobs[j].state is JobState.PENDING for j in self._pending
                ),
                timeout=timeout,
            )

    @property
    def jobs(self) -> list[GenerationJob]:
        with self._cond:
            return [self._jobs[i] for i in sorted(self._jobs)]

    @property
    def busy(self) -> bool:
        with self._cond:
            return self._running is not None or any(
                self._jobs[j].state is JobState.PENDING for j in self._pending
            )

    def stop(self) -> None:
        with self._cond:
            self._stopped = True
            self._cond.notify_all()
