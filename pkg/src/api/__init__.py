"""
API module for the etale-modules toolkit
Contains all FastAPI routes and endpoints.
"""
