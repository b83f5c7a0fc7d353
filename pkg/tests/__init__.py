"""
Test package for the Harbourne index toolkit

Unit tests per service plus CLI and census store tests.
"""
