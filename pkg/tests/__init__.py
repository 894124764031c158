"""Smellfuse test suite."""
