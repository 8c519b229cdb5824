"""Tests for bwcousins."""
