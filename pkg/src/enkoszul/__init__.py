"""Twisted free complete algebras over the Barratt-Eccles E_n operads."""

__version__ = "0.1.0"
