from __future__ import annotations

import random
from itertools import product

import pytest

from lcforge.errors import InputError, SpecialVerificationFailure
from lcforge.fields import GF, QQ
from lcforge.groebner import Ideal
from lcforge.linalg import determinant
from lcforge.model import SPECIAL_LC_REQUIRES, BuildConfig, HypothesisSet, MixingMatrix
from lcforge.rings import RingContext
from lcforge.special import (
    all_subsets,
    build_special_boundary,
    mix_generators,
    sample_invertible_matrix,
    subset_sweep,
    verify_subset_ci,
)

R4 = RingContext(["x", "y", "z", "w"])
P3 = Ideal([], R4)
ALL = HypothesisSet.of(*SPECIAL_LC_REQUIRES)
CONE = [R4("x^2 + y^2 + z^2")]
QUARTIC = [R4("x^2 + y^2 + z^2 + w^2"), R4("x^2 + 2*y^2 + 3*z^2 + 4*w^2")]
SINGULAR_QUARTIC = [R4("x^2 + y^2 + z^2 + w^2"), R4("x*y + z*w")]


def _matrix(rows, field=QQ):
    rows = tuple(tuple(field(v) for v in row) for row in rows)
    return MixingMatrix(rows, 0, determinant(rows, field))


def test_identity_mixing():
    assert mix_generators(QUARTIC, _matrix([[1, 0], [0, 1]])) == QUARTIC


def test_shear_mixing():
    F1, F2 = QUARTIC
    assert mix_generators(QUARTIC, _matrix([[1, 1], [0, 1]])) == [F1 + F2, F2]


def test_singular_mixing_is_rejected():
    with pytest.raises(InputError):
        mix_generators(QUARTIC, MixingMatrix(((1, 1), (1, 1)), 0, 0))


def test_degree_mismatch_is_rejected():
    with pytest.raises(InputError):
        mix_generators([R4("x"), R4("y^2")], _matrix([[1, 0], [0, 1]]))


def test_sample_matrix_r1_nonzero():
    m = sample_invertible_matrix(1, random.Random(0), QQ)
    assert m.entries[0][0] != 0


def test_sample_matrix_over_f2():
    f = GF(2)
    invertible = [m for m in product(range(2), repeat=4) if (m[0] * m[3] - m[1] * m[2]) % 2]
    assert len(invertible) == 6
    a = sample_invertible_matrix(2, random.Random(5), f)
    b = sample_invertible_matrix(2, random.Random(5), f)
    assert a == b and a.determinant == 1


def test_sample_matrix_from_zero_set_fails():
    with pytest.raises(SpecialVerificationFailure):
        sample_invertible_matrix(2, random.Random(0), QQ, sample_set=[0])


def test_empty_subset_report_cites_declarations():
    rep = verify_subset_ci(CONE, (), P3 + CONE, P3)
    assert rep.passed
    assert rep.reduced.evidence == {"declared": "X-normal"}


def test_cone_report():
    rep = verify_subset_ci(CONE, (0,), P3 + CONE, P3)
    assert rep.reduced.passed and rep.normal.passed and rep.smooth_away.passed


def test_smooth_quartic_lattice():
    reports = subset_sweep(QUARTIC, P3 + QUARTIC, P3)
    assert [r.subset for r in reports] == [(), (0,), (1,), (0, 1)]
    assert all(r.passed for r in reports)


def test_singular_quartic_fails_normality():
    reports = subset_sweep(SINGULAR_QUARTIC, P3 + SINGULAR_QUARTIC, P3)
    full = reports[-1]
    assert full.reduced.passed and not full.normal.passed


def test_parallel_sweep_matches_sequential():
    W = P3 + QUARTIC
    assert subset_sweep(QUARTIC, W, P3, workers=3) == subset_sweep(QUARTIC, W, P3)


def test_all_subsets_order():
    assert all_subsets(2) == [(), (0,), (1,), (0, 1)]
    assert len(all_subsets(5)) == 32


def test_build_cone():
    cert = build_special_boundary(P3, CONE, ALL, seed=0)
    assert cert.discrepancy.discrepancies == (-1,)
    assert len(cert.reports) == 2 and all(r.passed for r in cert.reports)
    assert cert.conclusion is not None and cert.conclusion["pair_claimed_lc_globally"] is True
    # r = 1: the boundary is W itself
    assert Ideal(list(cert.mixed), R4) == Ideal(CONE, R4)


def test_build_quartic_and_ideal_preserved():
    cert = build_special_boundary(P3, QUARTIC, ALL, seed=3)
    assert Ideal(list(cert.mixed), R4) == Ideal(QUARTIC, R4)
    assert len(cert.reports) == 4


def test_build_singular_quartic_fails():
    with pytest.raises(SpecialVerificationFailure) as info:
        build_special_boundary(P3, SINGULAR_QUARTIC, ALL, seed=0, config=BuildConfig(max_retries=1))
    assert info.value.stage == "subset-sweep"
    assert [0, 1] in info.value.subsets[0]


def test_max_r_is_enforced():
    with pytest.raises(InputError):
        build_special_boundary(P3, QUARTIC, ALL, config=BuildConfig(max_r=1))


def test_non_special_input_rejected():
    with pytest.raises(InputError):
        build_special_boundary(P3, [R4("x"), R4("y^2")], ALL)


@pytest.mark.parametrize("name", SPECIAL_LC_REQUIRES)
def test_single_deletion_withholds_conclusion(name):
    cert = build_special_boundary(P3, CONE, ALL.without(name), seed=0)
    assert cert.conclusion is None
