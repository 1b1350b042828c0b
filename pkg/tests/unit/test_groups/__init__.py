"""Tests for groups."""
