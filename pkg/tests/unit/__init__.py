"""Unit tests - Test domain logic in isolation."""
