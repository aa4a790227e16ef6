from __future__ import annotations

import random

import pytest

from lcforge.errors import InputError
from lcforge.fields import GF
from lcforge.groebner import Ideal, ideal_membership, projective_dimension, radical_membership
from lcforge.oracles import brute_force_points, brute_force_zerodivisor, containment_oracle, projective_points
from lcforge.predicates import is_non_zerodivisor, variety_containment
from lcforge.rings import RingContext

from conftest import ideal, random_form, twisted_cubic

F3 = RingContext(["x", "y", "z"], GF(3))
F7 = RingContext(["x", "y", "z"], GF(7))


def test_point_count_of_projective_space():
    assert len(list(projective_points(4, 2))) == 15
    assert len(list(projective_points(3, 7))) == 57


def test_points_examples():
    assert brute_force_points(ideal(F3, "x", "y")).points == ((0, 0, 1),)
    F2 = RingContext(["x", "y", "z", "w"], GF(2))
    assert len(brute_force_points(twisted_cubic(F2))) == 3
    assert len(brute_force_points(Ideal([F3.one], F3))) == 0


def test_bounds_are_enforced():
    big = RingContext(["a", "b", "c", "d", "e", "f"], GF(2))
    with pytest.raises(InputError):
        brute_force_points(Ideal([big("a")], big))
    F13 = RingContext(["x", "y"], GF(13))
    with pytest.raises(InputError):
        brute_force_points(Ideal([F13("x")], F13))
    Q = RingContext(["x", "y"])
    with pytest.raises(InputError):
        brute_force_points(Ideal([Q("x")], Q))


def test_zerodivisor_examples():
    assert brute_force_zerodivisor(F7("x"), ideal(F7, "x*y"), 3)
    assert not brute_force_zerodivisor(F7("y"), ideal(F7, "x"), 3)
    assert not brute_force_zerodivisor(F7.one, ideal(F7, "x"), 3)


def test_containment_examples():
    assert containment_oracle(ideal(F3, "x", "y"), ideal(F3, "x"))
    assert not containment_oracle(ideal(F3, "x"), ideal(F3, "x", "y"))
    I = ideal(F3, "x^2 + y*z")
    assert containment_oracle(I, I)


def _point_ideal(ring, pt):
    """Linear forms vanishing at a normalized point."""
    k = next(i for i, c in enumerate(pt) if c)
    gens = [ring.gen(i) - ring.gen(k).scale(c) for i, c in enumerate(pt) if i != k]
    return Ideal(gens, ring)


@pytest.mark.parametrize(
    "gens, count",
    [(("x*y", "x*z", "y*z"), 3), (("x - y", "z^2 - x*y"), 2), (("x", "y^2 + y*z"), 2)],
)
def test_zero_dimensional_fixtures_are_consistent(gens, count):
    I = ideal(F7, *gens)
    pts = brute_force_points(I)
    assert projective_dimension(I) == 0
    assert len(pts) == count
    for pt in pts.points:
        P = _point_ideal(F7, pt)
        assert all(ideal_membership(g, P) for g in I.gens)


def test_engine_agrees_on_small_zerodivisor_corpus():
    rng = random.Random(1)
    for _ in range(25):
        gens = [random_form(F7, rng.randint(1, 3), rng, terms=2) for _ in range(2)]
        gens = [g for g in gens if not g.is_zero()]
        g = random_form(F7, rng.randint(1, 2), rng, terms=2)
        if not gens or g.is_zero():
            continue
        I = Ideal(gens, F7)
        assert brute_force_zerodivisor(g, I, 6) == (not is_non_zerodivisor(g, I).passed)


def test_engine_containment_agrees_on_point_fixtures():
    A = ideal(F7, "x", "y")
    B = ideal(F7, "x*(x - z)", "y")
    assert containment_oracle(A, B) == variety_containment(A, B).passed
    assert containment_oracle(B, A) == variety_containment(B, A).passed


def test_radical_membership_matches_point_vanishing():
    I = ideal(F7, "x^2", "y^2 - y*z")
    pts = brute_force_points(I).points
    for f in (F7("x"), F7("y"), F7("y - z"), F7("x + y")):
        vanishes = all(f.evaluate(p) == 0 for p in pts)
        assert radical_membership(f, I) == vanishes
    assert not ideal_membership(F7("x"), I)
