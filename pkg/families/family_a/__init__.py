# A signature family
from .plugin import FamilyAPlugin

__all__ = ["FamilyAPlugin"]
