# D signature family
from .plugin import FamilyDPlugin

__all__ = ["FamilyDPlugin"]
