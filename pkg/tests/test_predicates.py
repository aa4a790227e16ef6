from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lcforge.errors import InputError
from lcforge.groebner import Ideal, affine_dimension
from lcforge.predicates import (
    is_component,
    is_generically_reduced,
    is_non_zerodivisor,
    is_normal_ci,
    is_regular_sequence,
    jacobian_ideal,
    singular_locus_ideal,
    variety_containment,
)
from lcforge.rings import RingContext

from conftest import ideal, random_form, twisted_cubic

S = RingContext(["x", "y"])
R = RingContext(["x", "y", "z"])
R4 = RingContext(["x", "y", "z", "w"])


def test_non_zerodivisor_examples():
    assert is_non_zerodivisor(S("y"), ideal(S, "x")).passed
    v = is_non_zerodivisor(S("x"), ideal(S, "x*y"))
    assert not v.passed and v.evidence["witness_basis"] == [S("y")]
    assert is_non_zerodivisor(S.one, ideal(S, "x")).passed
    with pytest.raises(ValueError):
        is_non_zerodivisor(S.zero, ideal(S, "x"))


def test_member_of_ideal_is_a_zerodivisor():
    assert not is_non_zerodivisor(S("x^2"), ideal(S, "x")).passed


def test_regular_sequence_examples():
    v = is_regular_sequence([R("x"), R("y")], Ideal([], R))
    assert v.passed and v.evidence["dimension_chain"] == [3, 2, 1]
    v = is_regular_sequence([R("x"), R("x*y")], Ideal([], R))
    assert not v.passed and v.evidence["dimension_chain"] == [3, 2, 2]
    assert is_regular_sequence([], Ideal([], R)).passed
    with pytest.raises(InputError):
        is_regular_sequence([R("x")], Ideal([R.one], R))


def test_regular_sequences_are_permutation_invariant():
    rng = random.Random(3)
    checked = 0
    for _ in range(20):
        gs = [random_form(R4, rng.randint(1, 2), rng) for _ in range(3)]
        if any(g.is_zero() for g in gs):
            continue
        if is_regular_sequence(gs, Ideal([], R4)).passed:
            checked += 1
            for perm in itertools.permutations(gs):
                assert is_regular_sequence(perm, Ideal([], R4)).passed
    assert checked > 5


def test_singular_locus_examples():
    assert singular_locus_ideal(ideal(S, "x^2")) == ideal(S, "x")
    # the Jacobian ideal of the node is (x, y); as a projective scheme the
    # two points of P^1 are smooth, so the saturated locus is empty
    assert singular_locus_ideal(ideal(S, "x*y"), saturate=False) == ideal(S, "x", "y")
    assert singular_locus_ideal(ideal(S, "x*y")).is_unit()
    assert singular_locus_ideal(ideal(R4, "x^2 + y^2 + z^2")) == ideal(R4, "x", "y", "z")


def test_generically_reduced_examples():
    assert not is_generically_reduced(ideal(S, "x^2")).passed
    assert is_generically_reduced(ideal(S, "x*y")).passed
    v = is_generically_reduced(ideal(R4, "x^2 + y^2 + z^2"))
    assert v.passed
    assert (v.evidence["singular_dimension"], v.evidence["dimension"]) == (1, 3)


def test_normality_examples():
    assert is_normal_ci(ideal(R4, "x^2 + y^2 + z^2")).passed
    assert not is_normal_ci(ideal(R, "x*y")).passed
    assert is_normal_ci(ideal(R, "x")).passed
    assert is_normal_ci(ideal(R, "x")).evidence["s2"] == "declared:X-CM"


def test_normality_inside_an_ambient():
    X = ideal(R4, "x*y - z^2")
    # the ruling V(x, z) of the cone is a smooth line
    assert is_normal_ci(X + R4("x"), X).evidence["dimension"] == 2
    # w = 0 misses the vertex and cuts a smooth conic
    assert is_normal_ci(X + R4("w"), X).passed
    # z = 0 passes through the vertex and cuts two lines meeting there
    assert not is_normal_ci(X + R4("z"), X).passed


def test_containment_examples():
    assert variety_containment(ideal(R, "x", "y"), ideal(R, "x")).passed
    assert not variety_containment(ideal(R, "x"), ideal(R, "x", "y")).passed
    assert variety_containment(ideal(R, "x^2", "x*y"), ideal(R, "x")).passed


def test_containment_with_constants_is_projective():
    # V(x, y, z) is empty in P^2, so it sits inside anything
    assert variety_containment(ideal(R, "x", "y", "z"), Ideal([R.one], R)).passed
    assert not variety_containment(ideal(R, "x"), Ideal([R.one], R)).passed


@given(st.integers(0, 10**6))
@settings(max_examples=15, deadline=None)
def test_containment_reflexive_and_transitive(seed):
    rng = random.Random(seed)
    gens = [random_form(R, rng.randint(1, 2), rng, terms=2) for _ in range(3)]
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return
    A = Ideal(gens, R)
    B = Ideal(gens[:2], R)
    C = Ideal(gens[:1], R)
    assert variety_containment(A, A).passed
    if variety_containment(A, B).passed and variety_containment(B, C).passed:
        assert variety_containment(A, C).passed


def test_component_examples():
    J = ideal(R4, "x*z - y^2", "y*w - z^2")
    assert is_component(twisted_cubic(R4), J).passed
    assert is_component(ideal(R4, "y", "z"), J).passed
    v = is_component(ideal(R4, "x", "y", "z"), J)
    assert not v.passed
    assert v.evidence["center_dimension"] == 0


def test_component_dimension_agrees():
    J = ideal(R4, "x*z - y^2", "y*w - z^2")
    for Z in (twisted_cubic(R4), ideal(R4, "y", "z")):
        assert is_component(Z, J).passed
        assert affine_dimension(Z) == affine_dimension(J)


def test_ruling_through_the_vertex_is_smooth():
    X = ideal(R4, "x*y - z^2")
    L = X + R4("x") + R4("z")
    assert jacobian_ideal(L, X).is_unit()
    assert is_generically_reduced(L, X).passed


def test_verdict_basics():
    v = is_non_zerodivisor(S("y"), ideal(S, "x"))
    assert v.verdict == "pass" and bool(v)
    assert v.citation == "nzd-generic-combination"
