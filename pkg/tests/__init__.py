"""
Tests for the perclab package
"""
