"""
Etale Modules
Main source package: exact verification of etale and prehomogeneous modules.
"""

__version__ = "1.0.0"
__author__ = "Etale Modules Team"
__description__ = "Exact Lie-level verification of etale and prehomogeneous modules"
