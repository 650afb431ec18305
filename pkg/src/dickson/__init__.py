"""Dickson polynomials over finite fields: evaluation, subsets and identity checks."""

__version__ = "0.1.0"
