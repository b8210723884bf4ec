"""Representability tools for mixed-integer convex programming."""

__version__ = "0.1.0"
