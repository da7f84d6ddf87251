"""
Services module for the etale-modules toolkit
Contains the verification service layer.
"""
