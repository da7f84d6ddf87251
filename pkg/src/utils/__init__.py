"""
Utilities module for the etale-modules toolkit
Contains the module-description parser and the report formatter.
"""
