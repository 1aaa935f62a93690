"""Exact matrix categories, the 2-category of 2-vector spaces, and their laws."""
from . import biproduct2, field, matcat, twovect

__all__ = ["biproduct2", "field", "matcat", "twovect"]
__version__ = "0.1.0"
