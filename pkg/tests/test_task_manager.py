import pytest

from core.event_bus import EventType
from core.models import Family, TaskStatus
from core.signature import parse_signature
from core.task_manager import SweepManager, run_sweep


def collect(bus, *event_types):
    seen = []
    for event_type in event_types:
        bus.subscribe(event_type, seen.append)
    bus.process_queue(max_events=1000)
    for event_type in event_types:
        bus.unsubscribe(event_type, seen.append)
    return seen


class TestSweepManager:
    def test_add_task_queues_event(self, clean_event_queue):
        manager = SweepManager()
        task = manager.add_task(parse_signature("1 | -1,-1,-1"))
        assert task.status == TaskStatus.QUEUED
        assert manager.get_task(task.id) is task
        events = collect(clean_event_queue, EventType.STRATUM_QUEUED)
        assert [e.payload["signature"] for e in events] == ["1 | -1,-1,-1"]

    @pytest.mark.asyncio
    async def test_run_inline(self, clean_event_queue):
        manager = SweepManager({"max_parallel_jobs": 1})
        manager.add_tasks([parse_signature("1 | -1,-1,-1"), parse_signature("1,1 | -2 | -1,-1")])
        tasks = await manager.run()
        assert [t.status for t in tasks] == [TaskStatus.COMPLETED, TaskStatus.COMPLETED]
        assert [r.signature for r in manager.records()] == ["1 | -1,-1,-1", "1,1 | -2 | -1,-1"]
        assert all(r.verdict == "match" for r in manager.records())

        events = collect(
            clean_event_queue,
            EventType.SWEEP_STARTED, EventType.STRATUM_STARTED,
            EventType.STRATUM_VERIFIED, EventType.SWEEP_COMPLETED,
        )
        kinds = [e.type for e in events]
        assert kinds.count(EventType.STRATUM_VERIFIED) == 2
        assert kinds[0] == EventType.SWEEP_STARTED
        assert kinds[-1] == EventType.SWEEP_COMPLETED

    @pytest.mark.asyncio
    async def test_unsupported_stratum_fails(self, clean_event_queue):
        manager = SweepManager()
        task = manager.add_task(parse_signature("1,1,1 | -5"))
        await manager.run()
        assert task.status == TaskStatus.FAILED
        assert task.errors and "UnsupportedFamily" in task.errors[0]
        (record,) = manager.records()
        assert record.verdict == "error"
        events = collect(clean_event_queue, EventType.STRATUM_FAILED)
        assert len(events) == 1

    @pytest.mark.asyncio
    async def test_cancel_before_start(self):
        manager = SweepManager()
        task = manager.add_task(parse_signature("1 | -1,-1,-1"))
        manager.cancel_all()
        await manager.run()
        assert task.status == TaskStatus.CANCELED
        assert manager.records()[0].verdict == "error"

    @pytest.mark.asyncio
    async def test_probe_mode(self):
        manager = SweepManager(probe=True)
        manager.add_task(parse_signature("1,1,1 | -5"))
        await manager.run()
        (record,) = manager.records()
        assert record.verdict == "probe"
        assert record.computed["components"] >= 1


class TestRunSweep:
    def test_parallel_matches_inline(self):
        inline = run_sweep(Family.C, 5, jobs=1)
        parallel = run_sweep(Family.C, 5, jobs=2)
        assert parallel.to_dict() == inline.to_dict()

    def test_settings_jobs_override(self):
        report = run_sweep(Family.C, 3, jobs=1, settings={"max_parallel_jobs": 8})
        assert [r.signature for r in report.records] == ["1 | -1,-1,-1"]


class TestProgress:
    @pytest.mark.asyncio
    async def test_progress_counts_every_task(self, clean_event_queue):
        manager = SweepManager()
        manager.add_tasks([
            parse_signature("1 | -1,-1,-1"),
            parse_signature("1,1,1 | -5"),
            parse_signature("1,1 | -2 | -1,-1"),
        ])
        seen = []
        handler = clean_event_queue.on_progress(seen.append)
        try:
            await manager.run()
        finally:
            clean_event_queue.unsubscribe(EventType.SWEEP_PROGRESS, handler)
        assert [p.done for p in seen] == [1, 2, 3]
        assert all(p.total == 3 for p in seen)
        assert seen[-1] == manager.progress
        assert manager.progress.failed == 1
        assert manager.progress.mismatches == 0
        assert [p.verdict for p in seen] == ["match", "failed", "match"]

    def test_run_sweep_reports_progress(self):
        seen = []
        report = run_sweep(Family.C, 5, jobs=1, on_progress=seen.append)
        assert len(seen) == len(report.records)
        assert [p.signature for p in seen] == [r.signature for r in report.records]
        assert seen[-1].done == seen[-1].total

    def test_handler_removed_after_sweep(self, clean_event_queue):
        seen = []
        run_sweep(Family.C, 3, jobs=1, on_progress=seen.append)
        run_sweep(Family.C, 3, jobs=1)
        assert len(seen) == 1
