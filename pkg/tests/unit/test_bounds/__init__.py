"""Tests for bounds."""
