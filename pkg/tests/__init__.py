"""Test suite for dtors."""
