"""Structured unstructured-search circuits: synthesis, rewriting and dense verification."""

__version__ = "0.3.0"
