"""Session orchestration: tools, inspiration chain, generation pipeline.

One manager owns every live session. All mutations of a session run under
that session's lock (arrival order, no interleaving); reads build snapshots
under the same lock. Generation is asynchronous: scheduling captures the
prompt, control image, adherence, and seed in effect at that moment, and the
per-session job queue guarantees at most one running job with stale jobs
superseded. Completed jobs append an iteration (design composited over white
via the foreground mask, plus the sketch scaffold) and push a notification to
any update subscribers.
"""

from __future__ import annotations

import logging
import queue as queue_mod
import random
import threading
from base64 import b64encode

from ..analogy import AnalogyEngine, InspirationRequest, InspirationSet, PromptLibrary
from ..backends import BackendSuite, build_suite
from ..backends.base import BackendError, GenerationRequest
from ..guidance import draw_seed
from ..images import composite_over_white, rgb_to_png
from ..raster import rasterize
from ..scaffold import make_scaffold
from ..session import Event, Iteration, Session, Stroke, UnknownSessionError
from ..stats import LogStats, compute_log_stats
from .config import ServiceConfig
from .jobs import GenerationJob, JobState, SessionJobQueue
from .persistence import SessionStore

logger = logging.getLogger(__name__)


class SessionManager:
    def __init__(
        self,
        config: ServiceConfig | None = None,
        backends: BackendSuite | None = None,
        store: SessionStore | None = None,
    ) -> None:
        self.config = config or ServiceConfig()
        self.backends = backends or build_suite(self.config.backends)
        if store is not None:
            self.store = store
        elif self.config.storage_dir is not None:
            self.store = SessionStore(self.config.storage_dir)
        else:
            self.store = None
        prompts = (
            PromptLibrary.load(self.config.template_dir)
            if self.config.template_dir
            else None
        )
        # the suite satisfies the LLM protocol and adds logging + retry
        self.engine = AnalogyEngine(llm=self.backends, prompts=prompts)
        self.seed_rng = random.Random(self.config.seed)
        self.sessions: dict[str, Session] = {}
        self._locks: dict[str, threading.RLock] = {}
        self._queues: dict[str, SessionJobQueue] = {}
        self._subscribers: dict[str, list[queue_mod.Queue]] = {}
        self._inspiration_sets: dict[str, InspirationSet] = {}
        self._chain_seeds: dict[str, int] = {}
        self._registry_lock = threading.Lock()
        if self.store is not None:
            for session in self.store.load_all():
                self._adopt(session)
                logger.info("restored session %s (%d iterations)", session.id, len(session.iterations))

    # -- registry ----------------------------------------------------------------

    def _adopt(self, session: Session) -> None:
        with self._registry_lock:
            self.sessions[session.id] = session
            self._locks[session.id] = threading.RLock()
            self._queues[session.id] = SessionJobQueue(session.id, self._execute_job)
            self._subscribers[session.id] = []
            self._chain_seeds[session.id] = 0
        if self.store is not None:
            session.on_event = lambda event, sid=session.id: self.store.append_event(sid, event)

    def _lock(self, session_id: str) -> threading.RLock:
        lock = self._locks.get(session_id)
        if lock is None:
            raise UnknownSessionError(f"unknown session {session_id!r}")
        return lock

    def get(self, session_id: str) -> Session:
        session = self.sessions.get(session_id)
        if session is None:
            raise UnknownSessionError(f"unknown session {session_id!r}")
        return session

    def create_session(
        self,
        subject: str,
        concept: str,
        canvas_size: tuple[int, int] | None = None,
    ) -> Session:
        session = Session(
            subject=subject,
            concept=concept,
            seed=draw_seed(self.seed_rng),
            canvas_size=canvas_size or (self.config.canvas_width, self.config.canvas_height),
        )
        self._adopt(session)
        self._persist(session)
        logger.info("created session %s subject=%r concept=%r", session.id, subject, concept)
        return session

    def _persist(self, session: Session) -> None:
        if self.store is not None:
            self.store.save_session(session)

    def _notify(self, session_id: str, message: dict) -> None:
        for sub in list(self._subscribers.get(session_id, [])):
            sub.put(message)

    # -- tool operations --------------------------------------------------------

    def add_stroke(self, session_id: str, points, width: float = 3.0) -> tuple[Stroke, GenerationJob]:
        with self._lock(session_id):
            session = self.get(session_id)
            stroke = session.add_stroke(points, width)
            job = self._schedule_locked(session)
            self._persist(session)
        return stroke, job

    def undo(self, session_id: str) -> Session:
        with self._lock(session_id):
            session = self.get(session_id)
            if session.undo() is not None:
                # the canvas changed without a new job: in-flight results are stale
                self._queues[session_id].supersede_all()
            self._persist(session)
        return session

    def clear(self, session_id: str) -> Session:
        with self._lock(session_id):
            session = self.get(session_id)
            session.clear()
            # a generation completing after Clear is discarded, not appended
            self._queues[session_id].supersede_all()
            self._persist(session)
        return session

    def erase_stroke(self, session_id: str, stroke_id: str) -> GenerationJob:
        with self._lock(session_id):
            session = self.get(session_id)
            session.erase_stroke(stroke_id)
            job = self._schedule_locked(session)
            self._persist(session)
        return job

    def remix(self, session_id: str) -> tuple[int, GenerationJob]:
        with self._lock(session_id):
            session = self.get(session_id)
            seed = session.remix(self.seed_rng)
            job = self._schedule_locked(session)
            self._persist(session)
        return seed, job

    def set_prompt(self, session_id: str, text: str) -> Session:
        with self._lock(session_id):
            session = self.get(session_id)
            session.set_manual_prompt(text)
            self._persist(session)
        return session

    def select_inspiration(self, session_id: str, label: str) -> GenerationJob:
        with self._lock(session_id):
            session = self.get(session_id)
            session.select_inspiration(label)
            job = self._schedule_locked(session)
            self._persist(session)
        return job

    def request_inspirations(
        self, session_id: str, count: int | None = None, refresh: bool = False
    ) -> InspirationSet:
        """Run the two-step chain; branches from the selected inspiration if any."""
        with self._lock(session_id):
            session = self.get(session_id)
            if refresh:
                self._chain_seeds[session_id] += 1
            chain_seed = self._chain_seeds[session_id]
            concept = session.inspiration or session.concept
            parent = session.inspiration
            request = InspirationRequest(
                subject=session.subject,
                concept=concept,
                count=count or self.config.inspiration_count,
            )
        # chain runs outside the session lock: it may hit a slow LLM backend
        result = self.engine.inspirations(request, parent=parent, chain_seed=chain_seed)
        with self._lock(session_id):
            self._inspiration_sets[session_id] = result
            session.log_event(
                "inspiration_requested",
                {
                    "concept": concept,
                    "parent": parent,
                    "count": request.count,
                    "labels": [i.label for i in result.items],
                    "warnings": result.warnings,
                },
            )
            self._persist(session)
        return result

    # -- generation ----------------------------------------------------------------

    def schedule_generation(self, session_id: str) -> GenerationJob:
        with self._lock(session_id):
            session = self.get(session_id)
            job = self._schedule_locked(session)
            self._persist(session)
        return job

    def _schedule_locked(self, session: Session) -> GenerationJob:
        """Capture current state into a job; older unfinished jobs get superseded."""
        n = session.active_stroke_count
        guidance = self.config.guidance.at(n)
        prompt = session.manual_prompt or self.config.render_prompt(
            session.subject, session.inspiration
        )
        control = rasterize(session.active_strokes(), session.canvas_size, self.config.raster)
        request = GenerationRequest(
            prompt=prompt,
            control_image=control,
            adherence=guidance,
            seed=session.seed,
            width=self.config.raster.width,
            height=self.config.raster.height,
        )
        return self._queues[session.id].schedule(
            lambda job_id: GenerationJob(
                session_id=session.id,
                job_id=job_id,
                request=request,
                stroke_count=n,
                guidance=guidance,
            )
        )

    def _execute_job(self, job: GenerationJob) -> None:
        session = self.sessions[job.session_id]
        jobs = self._queues[job.session_id]
        with self._lock(job.session_id):
            session.log_event(
                "generation_started",
                {
                    "job_id": job.job_id,
                    "stroke_count": job.stroke_count,
                    "guidance": job.guidance,
                    "seed": job.request.seed,
                },
            )
        try:
            design = self.backends.generate(job.request)
            try:
                mask = self.backends.foreground_mask(design)
            except BackendError as exc:
                # declared fallback: keep everything, warn, carry on
                job.warnings.append(f"foreground fallback (all-foreground): {exc}")
                mask = None
            composited = composite_over_white(design, mask) if mask is not None else design
            soft_edge = self.backends if self.backends.soft_edge is not None else None
            scaffold = make_scaffold(
                composited,
                segmentation=self.backends,
                soft_edge=soft_edge,
                config=self.config.scaffold,
            )
            if scaffold.meta.get("soft_edge_source") != "backend":
                job.warnings.append("soft-edge fallback: gradient magnitude")
            control_png = job.request.control_image.to_png()
            design_png = rgb_to_png(composited)
            scaffold_png = scaffold.to_png()
        except Exception as exc:
            kind = exc.kind if isinstance(exc, BackendError) else "internal"
            if kind == "internal":
                logger.exception(
                    "generation pipeline error session=%s job=%d", job.session_id, job.job_id
                )
            with self._lock(job.session_id):
                if jobs.finish(job, JobState.FAILED, str(exc)):
                    session.log_event(
                        "generation_completed",
                        {
                            "job_id": job.job_id,
                            "outcome": "failed",
                            "backend": kind,
                            "error": str(exc),
                        },
                    )
                    self._persist(session)
                    self._notify(
                        job.session_id,
                        {"type": "generation_failed", "job_id": job.job_id, "backend": kind},
                    )
            return

        with self._lock(job.session_id):
            if not jobs.finish(job, JobState.DONE):
                logger.info(
                    "discarding superseded result session=%s job=%d",
                    job.session_id, job.job_id,
                )
                return
            iteration = Iteration(
                index=len(session.iterations),
                prompt=job.request.prompt,
                seed=job.request.seed,
                stroke_count=job.stroke_count,
                guidance=job.guidance,
                control_image=control_png,
                design_image=design_png,
                scaffold_image=scaffold_png,
            )
            session.append_iteration(iteration)
            job.iteration_index = iteration.index
            session.log_event(
                "generation_completed",
                {
                    "job_id": job.job_id,
                    "outcome": "done",
                    "iteration_index": iteration.index,
                    "stroke_count": iteration.stroke_count,
                    "warnings": job.warnings,
                },
            )
            self._persist(session)
            self._notify(
                job.session_id,
                {
                    "type": "iteration_completed",
                    "iteration_index": iteration.index,
                    "stroke_count": iteration.stroke_count,
                },
            )

    # -- reads -----------------------------------------------------------------

    def state(self, session_id: str) -> dict:
        with self._lock(session_id):
            session = self.get(session_id)
            jobs = self._queues[session_id]
            inspirations = self._inspiration_sets.get(session_id)
            return {
                "id": session.id,
                "subject": session.subject,
                "concept": session.concept,
                "inspiration": session.inspiration,
                "manual_prompt": session.manual_prompt,
                "seed": session.seed,
                "created_at": session.created_at,
                "canvas": {
                    "width": session.canvas_size[0],
                    "height": session.canvas_size[1],
                },
                "stroke_count": session.active_stroke_count,
                "busy": jobs.busy,
                "current_iteration_index": session.current_iteration_index,
                "strokes": [s.to_dict() for s in session.strokes],
                "iterations": [
                    {
                        **it.to_dict(),
                        "design_url": f"/sessions/{session.id}/iterations/{it.index}/design",
                        "scaffold_url": f"/sessions/{session.id}/iterations/{it.index}/scaffold",
                        "control_url": f"/sessions/{session.id}/iterations/{it.index}/control",
                        "images_missing": it.design_image is None,
                        "underlay_alpha": self.config.scaffold.underlay_alpha,
                    }
                    for it in session.iterations
                ],
                "active_inspirations": [
                    {"label": i.label, "category": i.category, "parent": i.parent}
                    for i in (inspirations.items if inspirations else [])
                ],
                "jobs": [
                    {
                        "job_id": j.job_id,
                        "state": j.state.value,
                        "stroke_count": j.stroke_count,
                        "iteration_index": j.iteration_index,
                    }
                    for j in jobs.jobs
                ],
                "event_count": len(session.events),
            }

    def export(self, session_id: str, embed_images: bool = False) -> dict:
        """Full session document (schema mirrors the domain types)."""
        with self._lock(session_id):
            session = self.get(session_id)
            doc = session.to_dict(include_events=True)
            if embed_images:
                for record, iteration in zip(doc["iterations"], session.iterations):
                    for kind in ("control", "design", "scaffold"):
                        data = getattr(iteration, f"{kind}_image")
                        record[f"{kind}_image_png_b64"] = (
                            b64encode(data).decode("ascii") if data else None
                        )
            return doc

    def iteration_image(self, session_id: str, index: int, kind: str) -> bytes | None:
        with self._lock(session_id):
            session = self.get(session_id)
            if not 0 <= index < len(session.iterations):
                raise UnknownSessionError(
                    f"session {session_id} has no iteration {index}"
                )
            return getattr(session.iterations[index], f"{kind}_image")

    def events(self, session_id: str) -> list[Event]:
        with self._lock(session_id):
            return list(self.get(session_id).events)

    def stats(self, session_id: str) -> LogStats:
        return compute_log_stats(self.events(session_id))

    def jobs(self, session_id: str) -> list[GenerationJob]:
        self.get(session_id)
        return self._queues[session_id].jobs

    # -- update stream -------------------------------------------------------------

    def subscribe(self, session_id: str) -> queue_mod.Queue:
        self.get(session_id)
        sub: queue_mod.Queue = queue_mod.Queue()
        with self._lock(session_id):
            self._subscribers[session_id].append(sub)
        return sub

    def unsubscribe(self, session_id: str, sub: queue_mod.Queue) -> None:
        subs = self._subscribers.get(session_id, [])
        with self._lock(session_id):
            if sub in subs:
                subs.remove(sub)

    # -- lifecycle ----------------------------------------------------------------

    def wait_idle(self, session_id: str, timeout: float | None = 30.0) -> bool:
        self.get(session_id)
        return self._queues[session_id].wait_idle(timeout)

    def shutdown(self) -> None:
        for jobs in self._queues.values():
            jobs.stop()
