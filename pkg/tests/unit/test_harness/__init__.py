"""Tests for harness."""
