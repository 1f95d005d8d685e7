"""Exact expansions of algebraic power series and Eisenstein denominator certificates."""

__version__ = "0.1.0"

SCHEMA_TAG = "eisenbox/1"
