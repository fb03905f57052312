"""Test package for akhsylv."""
