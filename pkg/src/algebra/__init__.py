"""
Algebra module for the etale-modules toolkit
Exact matrices, matrix Lie algebras, representations, castling and the
constructed families.
"""
