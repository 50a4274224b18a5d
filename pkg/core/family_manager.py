"""
Family manager for discovering and loading signature family plugins.
"""
import importlib.util
import sys
from pathlib import Path
from typing import Any, Optional
import threading
import traceback

from .family_interface import FamilyInterface, FAMILY_API_VERSION
from .event_bus import EventBus, Event, EventType
from .models import Family

DEFAULT_FAMILIES_DIR = Path(__file__).resolve().parent.parent / "families"


class FamilyManager:
    """
    Manages family plugin discovery and loading.
    """

    def __init__(self, families_dir: Path = DEFAULT_FAMILIES_DIR):
        """
        Initialize the family manager.

        Args:
            families_dir: Directory to scan for family plugins
        """
        self.families_dir = families_dir
        self.families: dict[Family, FamilyInterface] = {}
        self.load_errors: dict[str, str] = {}
        self.event_bus = EventBus()

    def discover_and_load(self) -> int:
        """
        Discover and load all family plugins from the families directory.

        Returns:
            Number of successfully loaded plugins
        """
        self.families.clear()
        self.load_errors.clear()

        if not self.families_dir.exists():
            self.event_bus.emit_log("warning", f"Families directory not found: {self.families_dir}")
            return 0

        loaded = 0
        for item in sorted(self.families_dir.iterdir()):
            if item.is_dir() and not item.name.startswith("_"):
                plugin_file = item / "plugin.py"
                if plugin_file.exists() and self._load_family(plugin_file, item.name):
                    loaded += 1

        self.event_bus.emit_log("debug", f"Loaded {loaded} family plugin(s)", source="families")
        return loaded

    def _load_family(self, plugin_path: Path, plugin_name: str) -> bool:
        """
        Load a single family plugin from a file.

        Args:
            plugin_path: Path to the plugin file
            plugin_name: Name for the plugin module

        Returns:
            True if successfully loaded
        """
        try:
            spec = importlib.util.spec_from_file_location(f"families.{plugin_name}", plugin_path)
            if spec is None or spec.loader is None:
                raise ImportError(f"Could not load spec for {plugin_path}")

            module = importlib.util.module_from_spec(spec)
            sys.modules[spec.name] = module
            spec.loader.exec_module(module)

            plugin_class = None
            for attr_name in dir(module):
                attr = getattr(module, attr_name)
                if (isinstance(attr, type) and
                        issubclass(attr, FamilyInterface) and
                        attr is not FamilyInterface):
                    plugin_class = attr
                    break

            if plugin_class is None:
                raise ImportError(f"No FamilyInterface subclass found in {plugin_path}")

            if plugin_class.FAMILY_API_VERSION != FAMILY_API_VERSION:
                raise ImportError(
                    f"Family API version mismatch: "
                    f"plugin={plugin_class.FAMILY_API_VERSION}, "
                    f"required={FAMILY_API_VERSION}"
                )

            plugin = plugin_class()
            if plugin.family in self.families:
                raise ImportError(f"Family {plugin.family.value} is already handled")

            self.families[plugin.family] = plugin
            self.event_bus.publish_to_queue(Event(
                type=EventType.FAMILY_LOADED,
                payload={"family": plugin.family.value, "name": plugin.name},
                source="families",
            ))
            return True

        except Exception as e:
            error_msg = f"{type(e).__name__}: {e}\n{traceback.format_exc()}"
            self.load_errors[plugin_name] = error_msg
            self.event_bus.publish_to_queue(Event(
                type=EventType.FAMILY_ERROR,
                payload={"plugin_name": plugin_name, "error": str(e)},
                source="families",
            ))
            self.event_bus.emit_log("error", f"Failed to load family {plugin_name}: {e}", source="families")
            return False

    def get_family(self, family: Family) -> Optional[FamilyInterface]:
        """Get the plugin handling a family."""
        return self.families.get(family)

    def get_all_families(self) -> list[FamilyInterface]:
        return [self.families[f] for f in sorted(self.families, key=lambda f: f.value)]

    def configure(self, options: dict[str, Any]) -> None:
        """Pass settings to every loaded plugin."""
        for plugin in self.families.values():
            plugin.configure(options)

    def get_family_info(self) -> list[dict]:
        """Get info about all family plugins for display."""
        return [
            {
                "id": plugin.id,
                "family": plugin.family.value,
                "name": plugin.name,
                "version": plugin.version,
                "description": plugin.description,
                "boundary_types": list(plugin.boundary_types),
                "api_version": plugin.FAMILY_API_VERSION,
            }
            for plugin in self.get_all_families()
        ]


_default_manager: Optional[FamilyManager] = None
_default_lock = threading.Lock()


def get_family_manager() -> FamilyManager:
    """Process-wide manager, loaded on first use."""
    global _default_manager
    with _default_lock:
        if _default_manager is None:
            manager = FamilyManager()
            manager.discover_and_load()
            _default_manager = manager
        return _default_manager


def set_family_manager(manager: Optional[FamilyManager]) -> None:
    """Replace the process-wide manager (None to reload on next use)."""
    from . import boundary, invariants, net

    global _default_manager
    with _default_lock:
        _default_manager = manager
    boundary.clear_caches()
    net.plumb.cache_clear()
    invariants.clear_caches()
