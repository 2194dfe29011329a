"""Stabilizer ZX-calculus: diagrams, GS-LC normal forms and exact equality."""

__version__ = "0.1.0"
