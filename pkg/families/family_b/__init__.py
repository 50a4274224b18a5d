# B signature family
from .plugin import FamilyBPlugin

__all__ = ["FamilyBPlugin"]
