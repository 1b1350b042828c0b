"""Tests for concurrency."""
