"""Exact tools for quotient current Lie algebras and their Poisson pencils."""

__version__ = "0.1.0"
