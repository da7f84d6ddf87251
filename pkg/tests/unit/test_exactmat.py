"""
Tests for exact rational matrices and elimination
"""

from fractions import Fraction

import pytest

from src.algebra.exactmat import (
    Mat, Span, det, eliminate, format_scalar, kernel, rank, to_scalar, to_vector,
)
from src.models.errors import DimensionMismatchError


class TestScalars:

    def test_to_scalar_accepts_exact_values(self):
        assert to_scalar(3) == Fraction(3)
        assert to_scalar("2/6") == Fraction(1, 3)
        assert to_scalar(" -5 ") == Fraction(-5)
        assert to_scalar(Fraction(7, 2)) == Fraction(7, 2)

    def test_to_scalar_rejects_floats(self):
        with pytest.raises(TypeError):
            to_scalar(0.5)

    def test_format_scalar(self):
        assert format_scalar(Fraction(4)) == "4"
        assert format_scalar(Fraction(-3, 6)) == "-1/2"

    def test_to_vector(self):
        assert to_vector([1, "1/2", 0]) == (Fraction(1), Fraction(1, 2), Fraction(0))


class TestMat:

    def test_shape_checked(self):
        with pytest.raises(DimensionMismatchError):
            Mat.build(2, 2, [1, 2, 3])
        with pytest.raises(DimensionMismatchError):
            Mat.from_rows([[1, 2], [3]])

    def test_product_and_transpose(self):
        A = Mat.from_rows([[1, 2], [3, 4]])
        B = Mat.from_rows([[0, 1], [1, 0]])
        assert A @ B == Mat.from_rows([[2, 1], [4, 3]])
        assert A.T == Mat.from_rows([[1, 3], [2, 4]])

    def test_product_shape_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            Mat.zeros(2, 3) @ Mat.zeros(2, 3)

    def test_kron_row_major(self):
        A = Mat.from_rows([[1, 2], [3, 4]])
        I = Mat.identity(2)
        K = A.kron(I)
        assert K.shape == (4, 4)
        assert K[0, 2] == 2
        assert K[1, 3] == 2
        assert K[2, 0] == 3

    def test_block_diag_and_embed(self):
        A = Mat.from_rows([[1, 2], [3, 4]])
        D = Mat.block_diag([A, Mat.identity(1)])
        assert D == Mat.from_rows([[1, 2, 0], [3, 4, 0], [0, 0, 1]])
        assert A.embed(3, 1)[2, 2] == 4
        with pytest.raises(DimensionMismatchError):
            A.embed(2, 1)

    def test_matvec(self):
        A = Mat.from_rows([[1, 2], [3, 4]])
        assert A.matvec(to_vector([1, -1])) == (Fraction(-1), Fraction(-1))

    def test_power_of_nilpotent(self):
        N = Mat.from_rows([[0, 1, 0], [0, 0, 1], [0, 0, 0]])
        assert not N.power(2).is_zero()
        assert N.power(3).is_zero()


class TestElimination:

    def test_rank_of_dependent_rows(self):
        M = Mat.from_rows([[1, 2, 3], [2, 4, 6]])
        result = eliminate(M)
        assert result.rank == 1
        assert result.det is None
        assert result.pivots == (0,)

    def test_kernel_is_indexed_by_free_columns(self):
        M = Mat.from_rows([[1, 2, 3], [2, 4, 6]])
        assert kernel(M) == (
            to_vector([-2, 1, 0]),
            to_vector([-3, 0, 1]),
        )

    def test_kernel_vectors_are_annihilated(self):
        M = Mat.from_rows([[1, "1/2", 0, 2], [0, 1, -1, 1], [1, "3/2", -1, 3]])
        basis = kernel(M)
        assert len(basis) == 4 - rank(M)
        for v in basis:
            assert not any(M.matvec(v))

    def test_determinant(self):
        assert det(Mat.from_rows([[2, 1], [1, 3]])) == 5
        assert det(Mat.from_rows([[0, 1], [1, 0]])) == -1
        assert det(Mat.from_rows([["1/2", 0], [0, "2/3"]])) == Fraction(1, 3)
        assert det(Mat.from_rows([[1, 2], [2, 4]])) == 0

    def test_determinant_with_row_swaps(self):
        M = Mat.from_rows([[0, 2, 1], [1, 0, 0], [0, 1, 3]])
        assert det(M) == -5

    def test_empty_determinant_is_one(self):
        assert det(Mat.zeros(0)) == 1

    def test_determinant_needs_square(self):
        with pytest.raises(DimensionMismatchError):
            det(Mat.zeros(2, 3))

    def test_zero_matrix(self):
        result = eliminate(Mat.zeros(2, 3))
        assert result.rank == 0
        assert len(result.kernel_basis) == 3


class TestSpan:

    def test_rejects_dependent_vectors(self):
        span = Span(3)
        assert span.add([1, 0, 1])
        assert span.add([0, 1, 1])
        assert not span.add([1, 1, 2])
        assert span.dim == 2

    def test_coordinates_in_generators(self):
        span = Span(3)
        span.add(to_vector([1, 0, 1]))
        span.add(to_vector([0, 1, 1]))
        assert span.coordinates(to_vector([2, 3, 5])) == (Fraction(2), Fraction(3))
        assert span.coordinates(to_vector([0, 0, 1])) is None

    def test_length_checked(self):
        with pytest.raises(DimensionMismatchError):
            Span(3).add([1, 2])
