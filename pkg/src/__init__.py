"""Smellfuse - code smell detection from fused metric and semantic features."""

__version__ = "0.1.0"
