"""Benford first-digit fraud screening toolkit."""

__version__ = "0.1.0"
