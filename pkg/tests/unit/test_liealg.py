"""
Tests for classical Lie algebras, products and brackets
"""

import pytest

from src.algebra.exactmat import Mat, to_vector
from src.algebra.liealg import (
    LieAlgebra, bracket, classical_algebra, gram_matrix, product, verify_lie_axioms,
)
from src.models.entities import FactorKind
from src.models.errors import InvalidAlgebraError


@pytest.mark.parametrize("kind, n, expected", [
    ("gl", 3, 9),
    ("sl", 3, 8),
    ("so", 4, 6),
    ("sp", 1, 3),
    ("sp", 2, 10),
])
def test_dimensions(kind, n, expected):
    assert classical_algebra(kind, n).dim == expected


@pytest.mark.parametrize("kind, n", [("gl", 2), ("sl", 3), ("so", 4), ("sp", 2)])
def test_axioms_hold(kind, n):
    assert verify_lie_axioms(classical_algebra(kind, n))


def test_sp_preserves_its_form():
    J = gram_matrix(FactorKind.SP, 2)
    for A in classical_algebra("sp", 2).basis:
        assert (A.T @ J + J @ A).is_zero()


def test_sp_gram_pairs_are_interleaved(J2):
    assert gram_matrix("sp", 1) == J2
    J = gram_matrix("sp", 2)
    assert J[2, 3] == 1 and J[3, 2] == -1 and J[0, 2] == 0


def test_so_is_antisymmetric():
    for A in classical_algebra("so", 3).basis:
        assert A == -A.T


def test_gl_has_no_form():
    with pytest.raises(InvalidAlgebraError):
        gram_matrix("gl", 2)


def test_sizes_start_at_one():
    with pytest.raises(InvalidAlgebraError):
        classical_algebra("gl", 0)


def test_sl2_structure_constants():
    L = classical_algebra("sl", 2)
    c = L.structure_constants
    # basis E12, E21, H
    assert c[0][1] == {2: 1}
    assert c[1][0] == {2: -1}


def test_bracket_of_elementary_matrices():
    L = classical_algebra("gl", 2)
    E12, E21 = Mat.unit(2, 2, 0, 1), Mat.unit(2, 2, 1, 0)
    assert bracket(L, E12, E21) == Mat.from_rows([[1, 0], [0, -1]])


def test_product_offsets():
    L = product([classical_algebra("sp", 1), classical_algebra("gl", 1)])
    assert L.dim == 4
    assert L.ambient == 3
    assert L.factors[1].ambient_start == 2
    assert L.factors[1].basis_start == 3
    assert L.label == "sp(1) x gl(1)"
    assert verify_lie_axioms(L)


def test_coordinates_round_trip():
    L = classical_algebra("sl", 2)
    X = L.element([1, 2, 3])
    assert L.coordinates(X) == to_vector([1, 2, 3])
    assert L.coordinates(Mat.identity(2)) is None


def test_factor_block():
    L = product([classical_algebra("gl", 2), classical_algebra("gl", 1)])
    X = L.element([0] * 4 + [5])
    assert L.factor_block(X, 1) == Mat.from_rows([[5]])
    assert L.factor_block(X, 0).is_zero()


def test_non_closed_basis_fails_axioms():
    L = LieAlgebra.from_basis([Mat.unit(2, 2, 0, 1), Mat.unit(2, 2, 1, 0)])
    assert L.structure_constants is None
    assert not verify_lie_axioms(L)


def test_dependent_basis_fails_axioms():
    E = Mat.unit(2, 2, 0, 1)
    assert not verify_lie_axioms(LieAlgebra.from_basis([E, E.scale(2)]))
