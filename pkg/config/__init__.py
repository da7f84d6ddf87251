"""
Configuration package for the etale-modules toolkit
"""
