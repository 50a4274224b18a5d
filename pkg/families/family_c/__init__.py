# C signature family
from .plugin import FamilyCPlugin

__all__ = ["FamilyCPlugin"]
