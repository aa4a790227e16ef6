from __future__ import annotations

from fractions import Fraction

import pytest
import sympy

from lcforge.errors import NonHomogeneousError
from lcforge.fields import GF, QQ
from lcforge.linalg import determinant, graded_piece_basis, jacobian_matrix, minors_ideal, rank
from lcforge.rings import RingContext

R = RingContext(["x", "y", "z", "w"])


def test_determinant_matches_sympy():
    m = [[Fraction(2), Fraction(-1), Fraction(3)], [Fraction(1, 2), Fraction(4), Fraction(0)], [Fraction(5), Fraction(1), Fraction(-2)]]
    assert determinant(m, QQ) == sympy.Matrix(m).det()
    assert determinant([[1, 2], [2, 4]], QQ) == 0
    assert determinant([[1, 2], [3, 4]], GF(5)) == (4 - 6) % 5


def test_rank():
    rows = [{(1, 0): 1, (0, 1): 2}, {(1, 0): 2, (0, 1): 4}, {(0, 1): 1}]
    assert rank(rows, QQ) == 2


def test_graded_piece_of_twisted_cubic():
    gens = [R("x*z - y^2"), R("y*w - z^2"), R("x*w - y*z")]
    basis = graded_piece_basis(gens, 2)
    assert basis == [R("y^2 - x*z"), R("y*z - x*w"), R("z^2 - y*w")]
    # degree 3 piece of the twisted cubic ideal has dimension 20 - 10 = 10
    assert len(graded_piece_basis(gens, 3)) == 10
    assert graded_piece_basis(gens, 1) == []


def test_graded_piece_rejects_inhomogeneous():
    with pytest.raises(NonHomogeneousError):
        graded_piece_basis([R("x + 1")], 2)


def test_jacobian_and_minors():
    S = RingContext(["x", "y", "z"])
    J = jacobian_matrix([S("x*y"), S("z^2")])
    assert J == [[S("y"), S("x"), S.zero], [S.zero, S.zero, S("2*z")]]
    assert set(minors_ideal(J, 2)) == {S("2*y*z"), S("2*x*z")}
    assert minors_ideal(J, 0, S) == [S.one]
    with pytest.raises(ValueError):
        minors_ideal(J, 3)
