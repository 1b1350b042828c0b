"""Tests for lab config."""
