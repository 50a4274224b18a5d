"""
JSON settings for the engine and the command line.
"""
from pathlib import Path
from typing import Any, Optional
import json
import logging

log = logging.getLogger(__name__)

SETTINGS_FILE = "strata_atlas.json"

DEFAULT_SETTINGS: dict[str, Any] = {
    "max_parallel_jobs": 1,
    "check_involution": True,
    "admit_empty_top_type_one": True,
    "log_level": "INFO",
    "report_indent": 2,
}

# Settings handed to family plugins
FAMILY_OPTIONS = ("admit_empty_top_type_one",)


def load_settings(path: Optional[Path] = None) -> dict[str, Any]:
    """
    Defaults updated with the contents of a settings file.

    Args:
        path: JSON file to read; strata_atlas.json in the working directory if None

    Returns:
        A fresh settings dict; unreadable files leave the defaults in place
    """
    settings = dict(DEFAULT_SETTINGS)
    source = Path(path) if path is not None else Path(SETTINGS_FILE)
    try:
        if source.exists():
            with open(source, "r", encoding="utf-8") as f:
                saved = json.load(f)
            if not isinstance(saved, dict):
                raise ValueError("settings file must hold a JSON object")
            unknown = sorted(set(saved) - set(DEFAULT_SETTINGS))
            if unknown:
                log.warning("Ignoring unknown settings: %s", ", ".join(unknown))
            settings.update({k: v for k, v in saved.items() if k in DEFAULT_SETTINGS})
    except Exception as e:
        log.error("Error loading settings from %s: %s", source, e)
    return settings


def save_settings(settings: dict[str, Any], path: Optional[Path] = None) -> None:
    target = Path(path) if path is not None else Path(SETTINGS_FILE)
    try:
        with open(target, "w", encoding="utf-8") as f:
            json.dump(settings, f, indent=2)
    except Exception as e:
        log.error("Error saving settings to %s: %s", target, e)


def family_options(settings: dict[str, Any]) -> dict[str, Any]:
    return {k: settings[k] for k in FAMILY_OPTIONS if k in settings}
