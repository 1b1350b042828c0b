"""Test utils package."""
