"""Integration tests - Test adapters with real dependencies."""
