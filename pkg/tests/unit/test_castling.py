"""
Tests for castling transforms of tensor shapes
"""

import pytest

from src.algebra.castling import (
    TensorShape, castling_orbit, castling_transform, check_preservation, is_casual, is_reduced,
)
from src.algebra.liealg import classical_algebra
from src.algebra.rep import is_homomorphism, standard_rep
from src.models.entities import CastlingSide
from src.models.errors import CastlingError, InvalidAlgebraError


def shape(kind, size, n):
    return TensorShape(standard_rep(classical_algebra(kind, size)), n)


SHAPES = [
    ("sl", 2, 1), ("sl", 3, 1), ("sl", 3, 2), ("gl", 3, 1), ("gl", 4, 1),
    ("gl", 4, 3), ("sp", 1, 1), ("sp", 2, 1), ("sp", 2, 3), ("so", 3, 2),
]


def test_sl3_castles_to_two_copies_of_the_dual():
    T = shape("sl", 3, 1)
    U = castling_transform(T)
    assert U.gl_size == 2
    assert U.side is CastlingSide.DUAL_CORE
    assert U.module_dim == 6
    assert U.algebra_dim == 12
    assert "dual(" in U.describe()


@pytest.mark.parametrize("kind, size, n", SHAPES)
def test_castling_is_an_involution(kind, size, n):
    T = shape(kind, size, n)
    assert castling_transform(castling_transform(T)) == T


def test_undefined_when_gl_is_too_big():
    with pytest.raises(CastlingError):
        castling_transform(shape("sl", 2, 2))


def test_gl_size_checked():
    with pytest.raises(InvalidAlgebraError):
        shape("sl", 2, 0)


def test_reduced_and_casual():
    assert is_reduced(shape("sl", 3, 1))
    assert not is_reduced(shape("sl", 3, 2))
    assert is_reduced(shape("sl", 2, 1))
    assert is_casual(shape("sl", 2, 2))
    assert is_casual(shape("gl", 1, 1))
    assert not is_casual(shape("gl", 4, 1))


def test_orbit_alternates():
    orbit = castling_orbit(shape("sl", 3, 1), steps=3)
    assert [T.gl_size for T in orbit] == [1, 2, 1, 2]
    assert orbit[2] == orbit[0]


def test_orbit_stops_when_undefined():
    assert len(castling_orbit(shape("sl", 2, 2), steps=3)) == 1


def test_tensor_module_is_a_representation():
    R = shape("sl", 2, 1).to_representation()
    assert R.dim_v == 2
    assert R.dim_g == 4
    assert is_homomorphism(R)


def test_sl3_preservation():
    check = check_preservation(shape("sl", 3, 1), range(5), 10)
    assert check.generic_draws >= 4
    assert check.stabilizers_agree
    assert check.preserved
    generic = [d for d in check.draws if d.generic]
    assert all(d.stabilizer_before == 6 == d.stabilizer_after for d in generic)


def test_so3_preservation():
    check = check_preservation(shape("so", 3, 2), range(5), 10)
    assert check.generic_draws >= 4
    assert check.preserved
