"""Tests for spectral."""
