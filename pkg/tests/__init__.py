"""Test suite for oscint."""
