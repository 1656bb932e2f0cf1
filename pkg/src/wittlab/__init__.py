"""Exact arithmetic for Witt vectors, the integral BC-system and p-adic L-values."""

__version__ = "0.1.0"
