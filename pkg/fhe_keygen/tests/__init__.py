"""Tests for fhe-keygen."""
