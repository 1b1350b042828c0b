"""Tests for dpp."""
