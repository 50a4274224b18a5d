from pathlib import Path

from core.event_bus import EventType
from core.family_manager import DEFAULT_FAMILIES_DIR, FamilyManager, get_family_manager, set_family_manager
from core.models import Family


def test_discovers_every_family():
    manager = FamilyManager()
    assert manager.discover_and_load() == 4
    assert manager.load_errors == {}
    assert [p.family for p in manager.get_all_families()] == [Family.A, Family.B, Family.C, Family.D]


def test_family_info():
    manager = FamilyManager()
    manager.discover_and_load()
    info = {entry["family"]: entry for entry in manager.get_family_info()}
    assert info["B"]["boundary_types"] == ["B-I", "B-IIIa", "B-IIIb", "B-IIIc"]
    assert info["C"]["id"] == "family_c_1.0.0"


def test_missing_directory(tmp_path):
    manager = FamilyManager(tmp_path / "nowhere")
    assert manager.discover_and_load() == 0


def test_broken_plugin_is_reported(tmp_path, clean_event_queue):
    broken = tmp_path / "family_x"
    broken.mkdir()
    (broken / "plugin.py").write_text("raise RuntimeError('cannot import')\n", encoding="utf-8")
    manager = FamilyManager(tmp_path)
    assert manager.discover_and_load() == 0
    assert "family_x" in manager.load_errors

    seen = []
    clean_event_queue.subscribe(EventType.FAMILY_ERROR, seen.append)
    try:
        clean_event_queue.process_queue(max_events=1000)
    finally:
        clean_event_queue.unsubscribe(EventType.FAMILY_ERROR, seen.append)
    assert seen[0].payload["plugin_name"] == "family_x"


def test_configure_reaches_plugins():
    manager = FamilyManager()
    manager.discover_and_load()
    manager.configure({"admit_empty_top_type_one": False})
    assert all(p.options == {"admit_empty_top_type_one": False} for p in manager.get_all_families())


def test_process_wide_manager_is_shared():
    set_family_manager(None)
    first = get_family_manager()
    assert get_family_manager() is first
    assert first.families_dir == DEFAULT_FAMILIES_DIR
    assert isinstance(DEFAULT_FAMILIES_DIR, Path)
