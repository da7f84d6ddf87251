"""
Tests module for the etale-modules toolkit
Contains unit tests, integration tests, and test utilities.
"""
