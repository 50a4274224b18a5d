import json

from core.settings import DEFAULT_SETTINGS, family_options, load_settings, save_settings


def test_defaults_without_file(tmp_path):
    assert load_settings(tmp_path / "missing.json") == DEFAULT_SETTINGS


def test_file_overrides_defaults(tmp_path):
    path = tmp_path / "atlas.json"
    path.write_text(json.dumps({"max_parallel_jobs": 4, "check_involution": False}), encoding="utf-8")
    settings = load_settings(path)
    assert settings["max_parallel_jobs"] == 4
    assert settings["check_involution"] is False
    assert settings["report_indent"] == DEFAULT_SETTINGS["report_indent"]


def test_unknown_keys_ignored(tmp_path, caplog):
    path = tmp_path / "atlas.json"
    path.write_text(json.dumps({"download_folder": "x"}), encoding="utf-8")
    assert load_settings(path) == DEFAULT_SETTINGS
    assert "download_folder" in caplog.text


def test_broken_file_keeps_defaults(tmp_path, caplog):
    path = tmp_path / "atlas.json"
    path.write_text("{not json", encoding="utf-8")
    assert load_settings(path) == DEFAULT_SETTINGS
    assert "Error loading settings" in caplog.text


def test_save_then_load(tmp_path):
    path = tmp_path / "atlas.json"
    settings = dict(DEFAULT_SETTINGS, max_parallel_jobs=3)
    save_settings(settings, path)
    assert load_settings(path) == settings


def test_family_options():
    assert family_options(DEFAULT_SETTINGS) == {"admit_empty_top_type_one": True}
