"""Exact toolkit for code equivalence, point set equivalence, and
polynomial isomorphism over small finite fields."""

from .gf import Field, field_make

__all__ = ["Field", "field_make"]
__version__ = "0.1.0"
