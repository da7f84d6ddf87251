"""
Models module for the etale-modules toolkit
Contains data models, errors and report schemas.
"""
