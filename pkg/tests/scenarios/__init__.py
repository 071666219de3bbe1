"""Tests for derivation scenarios."""
