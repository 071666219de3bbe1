"""Test suite for nonorientable-reps."""
