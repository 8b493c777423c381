"""Unit test package for fairworld."""
