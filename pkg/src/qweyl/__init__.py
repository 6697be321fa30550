"""Rank-two quantized Weyl algebras at roots of unity, in exact arithmetic."""

__version__ = "0.1.0"
