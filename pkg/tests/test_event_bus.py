import logging

import pytest

from core.event_bus import Event, EventBus, EventType, SweepProgress, forward_logs


def test_singleton():
    assert EventBus() is EventBus()


def test_publish_calls_subscribers():
    bus = EventBus()
    seen = []
    bus.subscribe(EventType.SWEEP_STARTED, seen.append)
    try:
        bus.publish(Event(type=EventType.SWEEP_STARTED, payload={"tasks": 3}))
    finally:
        bus.unsubscribe(EventType.SWEEP_STARTED, seen.append)
    assert [e.payload["tasks"] for e in seen] == [3]


def test_failing_handler_does_not_stop_others():
    bus = EventBus()
    seen = []

    def broken(event):
        raise RuntimeError("boom")

    bus.subscribe(EventType.SWEEP_COMPLETED, broken)
    bus.subscribe(EventType.SWEEP_COMPLETED, seen.append)
    try:
        bus.publish(Event(type=EventType.SWEEP_COMPLETED))
    finally:
        bus.unsubscribe(EventType.SWEEP_COMPLETED, broken)
        bus.unsubscribe(EventType.SWEEP_COMPLETED, seen.append)
    assert len(seen) == 1


def test_queue_is_drained_in_order(clean_event_queue):
    bus = clean_event_queue
    seen = []
    bus.subscribe(EventType.STRATUM_QUEUED, seen.append)
    try:
        for i in range(3):
            bus.publish_to_queue(Event(type=EventType.STRATUM_QUEUED, payload={"i": i}))
        assert seen == []
        assert bus.process_queue(max_events=2) == 2
        assert bus.process_queue() == 1
    finally:
        bus.unsubscribe(EventType.STRATUM_QUEUED, seen.append)
    assert [e.payload["i"] for e in seen] == [0, 1, 2]


def test_forward_logs(caplog):
    with caplog.at_level(logging.WARNING, logger="strata_atlas"):
        forward_logs(Event(type=EventType.LOG_WARNING, payload={"message": "careful"}, source="sweep"))
    assert any(r.name == "strata_atlas.sweep" and r.message == "careful" for r in caplog.records)


def test_emit_log_queues_level(clean_event_queue):
    bus = clean_event_queue
    seen = []
    bus.subscribe(EventType.LOG_ERROR, seen.append)
    try:
        bus.emit_log("error", "bad", source="families")
        bus.process_queue()
    finally:
        bus.unsubscribe(EventType.LOG_ERROR, seen.append)
    assert seen[0].payload["message"] == "bad"
    assert seen[0].source == "families"


class TestSweepProgress:
    def test_event_carries_the_counts(self):
        progress = SweepProgress(done=2, total=4, signature="1 | -1,-1,-1", verdict="match", mismatches=1)
        event = progress.to_event()
        assert event.type == EventType.SWEEP_PROGRESS
        assert event.source == "sweep"
        assert SweepProgress.from_event(event) == progress
        assert progress.fraction == 0.5

    def test_other_events_are_rejected(self):
        with pytest.raises(ValueError):
            SweepProgress.from_event(Event(type=EventType.SWEEP_STARTED))

    def test_empty_sweep_is_complete(self):
        assert SweepProgress(done=0, total=0, signature="", verdict="").fraction == 1.0

    def test_typed_subscriber(self, clean_event_queue):
        bus = clean_event_queue
        seen = []
        handler = bus.on_progress(seen.append)
        try:
            bus.emit_progress(SweepProgress(done=1, total=3, signature="2 | -1,-1 | -1,-1", verdict="match"))
        finally:
            bus.unsubscribe(EventType.SWEEP_PROGRESS, handler)
        assert [(p.done, p.total) for p in seen] == [(1, 3)]
        assert bus.process_queue() == 0
