"""
Test suite for nzflow.
"""
