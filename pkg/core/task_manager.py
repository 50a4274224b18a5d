"""
Sweep manager: queues one task per stratum and verifies them in parallel.
"""
import asyncio
from concurrent.futures import Executor, ProcessPoolExecutor
from functools import partial
from typing import Any, Callable, Optional
import time

from .event_bus import EventBus, Event, EventType, SweepProgress
from .models import (
    CancelledException,
    Family,
    SweepTask,
    TaskStatus,
    VerdictRecord,
)
from .settings import DEFAULT_SETTINGS
from .signature import Signature
from .verify import SweepReport, family_signatures, probe_signature_text, verify_signature_text


class SweepManager:
    """
    Runs the verification (or probe) of many strata.

    Each stratum is a SweepTask. Tasks run under a semaphore of
    max_parallel_jobs; with more than one job the work is handed to a
    process pool, otherwise it runs inline on the event loop thread.
    """

    def __init__(self, settings: Optional[dict[str, Any]] = None, probe: bool = False):
        """
        Initialize the sweep manager.

        Args:
            settings: Engine settings (max_parallel_jobs, family options)
            probe: Probe A strata instead of verifying predictions
        """
        self.settings = dict(DEFAULT_SETTINGS)
        self.settings.update(settings or {})
        self.probe = probe
        self.event_bus = EventBus()

        self.tasks: dict[str, SweepTask] = {}
        self.task_order: list[str] = []
        self.progress: Optional[SweepProgress] = None
        self._total = 0

    @property
    def max_parallel_jobs(self) -> int:
        return max(1, int(self.settings.get("max_parallel_jobs", 1)))

    def add_task(self, sig: Signature) -> SweepTask:
        """Queue one stratum."""
        task = SweepTask(signature=sig.render())
        self.tasks[task.id] = task
        self.task_order.append(task.id)
        self.event_bus.publish_to_queue(Event(
            type=EventType.STRATUM_QUEUED,
            payload={"task_id": task.id, "signature": task.signature},
            source="sweep",
        ))
        return task

    def add_tasks(self, signatures: list[Signature]) -> list[SweepTask]:
        return [self.add_task(sig) for sig in signatures]

    def get_task(self, task_id: str) -> Optional[SweepTask]:
        return self.tasks.get(task_id)

    def get_all_tasks(self) -> list[SweepTask]:
        """All tasks in insertion order."""
        return [self.tasks[tid] for tid in self.task_order if tid in self.tasks]

    def cancel_task(self, task_id: str) -> None:
        """Cancel a task that has not started yet."""
        task = self.tasks.get(task_id)
        if task and task.status == TaskStatus.QUEUED:
            task.cancel_token.cancel()

    def cancel_all(self) -> None:
        for task in self.get_all_tasks():
            self.cancel_task(task.id)

    def _worker(self):
        target = probe_signature_text if self.probe else verify_signature_text
        return partial(target, settings=self.settings)

    async def run(self) -> list[SweepTask]:
        """
        Run every queued task to completion.

        Returns:
            The tasks in insertion order
        """
        semaphore = asyncio.Semaphore(self.max_parallel_jobs)
        pending = [t for t in self.get_all_tasks() if t.status == TaskStatus.QUEUED]
        self._total = len(pending)
        self.progress = SweepProgress(done=0, total=self._total, signature="", verdict="")
        self.event_bus.publish_to_queue(Event(
            type=EventType.SWEEP_STARTED,
            payload={"tasks": len(pending), "jobs": self.max_parallel_jobs},
            source="sweep",
        ))

        executor: Optional[Executor] = None
        if self.max_parallel_jobs > 1:
            executor = ProcessPoolExecutor(max_workers=self.max_parallel_jobs)
        try:
            await asyncio.gather(*(self._run_task(t, semaphore, executor) for t in pending))
        finally:
            if executor is not None:
                executor.shutdown(wait=True, cancel_futures=True)

        failed = sum(1 for t in pending if t.status == TaskStatus.FAILED)
        self.event_bus.publish_to_queue(Event(
            type=EventType.SWEEP_COMPLETED,
            payload={"tasks": len(pending), "failed": failed},
            source="sweep",
        ))
        return self.get_all_tasks()

    async def _run_task(
        self,
        task: SweepTask,
        semaphore: asyncio.Semaphore,
        executor: Optional[Executor],
    ) -> None:
        """Verify one stratum."""
        async with semaphore:
            start = time.perf_counter()
            try:
                task.cancel_token.check()
                task.status = TaskStatus.RUNNING
                self._emit_task_update(task, EventType.STRATUM_STARTED)

                worker = self._worker()
                if executor is None:
                    task.verdict = worker(task.signature)
                else:
                    loop = asyncio.get_running_loop()
                    task.verdict = await loop.run_in_executor(executor, worker, task.signature)

                task.status = TaskStatus.COMPLETED
                task.elapsed = time.perf_counter() - start
                self._emit_task_update(task, EventType.STRATUM_VERIFIED)
                if task.verdict.verdict == "mismatch":
                    self.event_bus.emit_log("warning", f"Mismatch: {task.signature}", source="sweep")

            except CancelledException:
                task.status = TaskStatus.CANCELED
                self._emit_task_update(task, EventType.STRATUM_CANCELED)

            except Exception as e:
                task.status = TaskStatus.FAILED
                task.errors.append(f"{type(e).__name__}: {e}")
                task.elapsed = time.perf_counter() - start
                self._emit_task_update(task, EventType.STRATUM_FAILED)
                self.event_bus.emit_log("error", f"Stratum {task.signature} failed: {e}", source="sweep")

            self._advance(task)

    def _advance(self, task: SweepTask) -> None:
        """Count a finished task and publish the new progress."""
        previous = self.progress or SweepProgress(done=0, total=self._total, signature="", verdict="")
        verdict = task.verdict.verdict if task.verdict is not None else task.status.name.lower()
        self.progress = SweepProgress(
            done=previous.done + 1,
            total=self._total,
            signature=task.signature,
            verdict=verdict,
            mismatches=previous.mismatches + (verdict == "mismatch"),
            failed=previous.failed + (task.status == TaskStatus.FAILED),
        )
        self.event_bus.emit_progress(self.progress)

    def _emit_task_update(self, task: SweepTask, event_type: EventType) -> None:
        """Emit a task update event."""
        payload: dict[str, Any] = {
            "task_id": task.id,
            "signature": task.signature,
            "status": task.status.name,
            "elapsed": task.elapsed,
        }
        if task.verdict is not None:
            payload["verdict"] = task.verdict.verdict
        if task.errors:
            payload["error"] = task.errors[-1]
        self.event_bus.publish_to_queue(Event(type=event_type, payload=payload, source="sweep"))

    def records(self) -> list[VerdictRecord]:
        """
        One record per task, failed tasks included as errors.

        Ordered by the order the signatures were queued, independently of
        which worker finished first.
        """
        records = []
        for task in self.get_all_tasks():
            if task.verdict is not None:
                records.append(task.verdict)
            elif task.status in (TaskStatus.FAILED, TaskStatus.CANCELED):
                records.append(VerdictRecord(
                    signature=task.signature,
                    family="",
                    verdict="error",
                    details=list(task.errors) or [task.status_text],
                ))
        return records


def run_sweep(
    family: Family,
    max_pole_sum: int,
    jobs: int = 1,
    settings: Optional[dict[str, Any]] = None,
    probe: bool = False,
    on_progress: Optional[Callable[[SweepProgress], None]] = None,
) -> SweepReport:
    """
    Enumerate a family up to the pole bound and run every stratum.

    on_progress receives a SweepProgress each time a stratum finishes.
    """
    merged = dict(DEFAULT_SETTINGS)
    merged.update(settings or {})
    merged["max_parallel_jobs"] = jobs
    manager = SweepManager(merged, probe=probe)
    manager.add_tasks(family_signatures(family, max_pole_sum))
    handler = manager.event_bus.on_progress(on_progress) if on_progress is not None else None
    try:
        asyncio.run(manager.run())
    finally:
        if handler is not None:
            manager.event_bus.unsubscribe(EventType.SWEEP_PROGRESS, handler)
    return SweepReport(family=family.value, max_pole_sum=max_pole_sum, records=manager.records())
