"""Exact invariants of comodule algebras over bosonized quantum linear spaces."""

__version__ = "0.1.0"
