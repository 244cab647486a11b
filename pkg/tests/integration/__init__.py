"""Integration tests for meanfield-lab."""
