"""Exact tools for inscribing planar order types on a circle."""

__version__ = "0.1.0"
