"""Exact computations with semidualizing modules over finite local algebras."""

__version__ = "0.1.0"
