"""Tests for configuration modules."""
