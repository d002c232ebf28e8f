"""Tests for data models."""
