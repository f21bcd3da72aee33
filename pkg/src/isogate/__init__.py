"""Exact-arithmetic toolkit for isogeny classification checks over quadratic fields."""

__version__ = "0.1.0"
