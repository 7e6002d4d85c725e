"""Unit tests for models package."""
