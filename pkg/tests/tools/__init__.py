"""Tests for tools modules."""
