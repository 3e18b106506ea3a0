"""Symmetric function-field families over small finite fields."""

__version__ = "0.1.0"
