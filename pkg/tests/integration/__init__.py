"""Integration tests for the isph command line."""
