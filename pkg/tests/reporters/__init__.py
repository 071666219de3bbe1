"""Tests for reporter modules."""
