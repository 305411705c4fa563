"""Tests for exactrc."""
