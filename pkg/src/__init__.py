"""Persistence pairs, persistence hierarchies and their distances for scalar fields."""

__version__ = "0.1.0"
