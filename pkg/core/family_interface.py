"""
Family plugin interface definition.
Every signature family handler implements this interface.
"""
from abc import ABC, abstractmethod
from typing import Any, Iterator

from .boundary import BoundaryPoint
from .levels import LevelStructure
from .models import Family, PredictedCount, UnsupportedFamily
from .signature import Signature, classify_one_dim

# Current family API version - plugins must match this
FAMILY_API_VERSION = 1


class FamilyInterface(ABC):
    """
    Abstract base class for signature family handlers.

    Plugins implement raw boundary enumeration, realization of raw data as
    two levels and the predicted component counts, and define class-level
    metadata attributes.
    """

    # Required metadata (override in subclass)
    FAMILY_API_VERSION: int = FAMILY_API_VERSION
    family: Family = Family.NOT_ONE_DIMENSIONAL
    name: str = "Unnamed Family"
    version: str = "0.0.0"
    description: str = ""
    boundary_types: tuple[str, ...] = ()

    def __init__(self):
        """Initialize the plugin."""
        self.options: dict[str, Any] = {}

    @property
    def id(self) -> str:
        """Unique identifier for this plugin."""
        return f"family_{self.family.value.lower()}_{self.version}"

    def configure(self, options: dict[str, Any]) -> None:
        """Apply settings relevant to this family."""
        self.options = dict(options)

    def can_handle(self, sig: Signature) -> bool:
        """True if sig belongs to this family."""
        return classify_one_dim(sig) == self.family

    # ==================== Required Methods ====================

    @abstractmethod
    def raw_boundaries(self, sig: Signature) -> Iterator[BoundaryPoint]:
        """
        Yield raw boundary data covering every boundary point of sig.

        Duplicates and candidates violating a constraint are allowed; the
        boundary index realizes each one and keeps canonical survivors.

        Args:
            sig: A signature of this family

        Returns:
            Iterator over raw BoundaryPoint values
        """
        pass

    @abstractmethod
    def realize(self, b: BoundaryPoint) -> LevelStructure:
        """
        Build the two levels of raw boundary data.

        Args:
            b: Raw boundary data of this family

        Returns:
            The assembled LevelStructure (validated by the caller)

        Raises:
            ValidationError if the data violates a family constraint
        """
        pass

    # ==================== Optional Methods ====================

    def predicted_components(self, sig: Signature) -> PredictedCount:
        """
        Component counts predicted by the classification theorems.

        Raises:
            UnsupportedFamily when the family has no classification
        """
        raise UnsupportedFamily(f"family {self.family.value} has no predicted counts")
