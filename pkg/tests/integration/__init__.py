"""Integration tests for the spectral-measure lab."""
