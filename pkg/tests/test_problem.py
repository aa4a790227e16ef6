from __future__ import annotations

import random

import pytest

from lcforge.errors import InputError, ParseError
from lcforge.fields import GF
from lcforge.groebner import Ideal
from lcforge.problem import parse_problem

from conftest import FIXTURES, fixture_text, twisted_cubic

HYP = "declare: X-normal, X-Q-Gorenstein, X-CM, Z-prime, not-in-SingX\n"


def test_point_in_plane():
    spec = parse_problem("field Q\nring x y z\nambient:\ncenter: x; y\n" + HYP)
    assert spec.ring.names == ("x", "y", "z")
    assert spec.ambient == ()
    assert spec.center == (spec.ring("x"), spec.ring("y"))
    assert spec.mode == "potential-lc"


def test_twisted_cubic_spec():
    spec = parse_problem(fixture_text("twisted_cubic"))
    R = spec.ring
    assert spec.center == (R("x*z - y^2"), R("y*w - z^2"), R("x*w - y*z"))
    assert spec.center_ideal() == twisted_cubic(R)


def test_non_homogeneous_generator_is_reported_with_terms():
    with pytest.raises(ParseError) as info:
        parse_problem("field Q\nring x y z\ncenter: x + 1\n" + HYP)
    err = info.value
    assert (err.line, err.column) == (3, 9)
    assert "not homogeneous" in str(err) and "degree 0: 1" in str(err)


def test_unknown_variable_is_located():
    with pytest.raises(ParseError) as info:
        parse_problem("field Q\nring x y\ncenter: x; q^2\n" + HYP)
    assert (info.value.line, info.value.column) == (3, 12)


def test_continuation_lines_and_comments():
    text = "# header\nfield GF(7)  # a prime field\nring x, y, z, w\ncenter: x*z - y^2\n   y*w - z^2; x*w - y*z\n" + HYP
    spec = parse_problem(text)
    assert spec.field == GF(7)
    assert len(spec.center) == 3


def test_field_override():
    spec = parse_problem(fixture_text("point"), field_override="GF(101)")
    assert spec.field == GF(101)
    with pytest.raises(ParseError):
        parse_problem(fixture_text("point"), field_override="GF(100)")


def test_missing_hypotheses_are_rejected():
    with pytest.raises(ParseError) as info:
        parse_problem("field Q\nring x y z\ncenter: x; y\ndeclare: X-normal\n")
    assert "Z-prime" in str(info.value)
    spec = parse_problem("field Q\nring x y z\ncenter: x; y\n", require_hypotheses=False)
    assert "X-CM" in spec.missing_hypotheses()


def test_unknown_hypothesis_and_mode():
    with pytest.raises(ParseError):
        parse_problem("field Q\nring x\ncenter: x\ndeclare: X-smooth\n")
    with pytest.raises(ParseError):
        parse_problem("field Q\nring x\ncenter: x\nmode sideways\n", require_hypotheses=False)


@pytest.mark.parametrize(
    "text",
    [
        "ring x y\ncenter: x\n",
        "field Q\ncenter: x\n",
        "field Q\nring x y\n",
        "field Q\nring x x\ncenter: x\n",
        "field Q\nring x y\ncenter: x\ncenter: y\n",
        "field Q\nring x y\nx + y\ncenter: x\n",
        "field Q\nring x 2y\ncenter: x\n",
        "field Q\nring x y\ncenter: 0\n",
    ],
)
def test_malformed_inputs(text):
    with pytest.raises(ParseError):
        parse_problem(text, require_hypotheses=False)


def test_ingestion_saturates():
    spec = parse_problem("field Q\nring x y z\ncenter: x^2; x*y; x*z\n" + HYP)
    assert spec.center_ideal() == Ideal([spec.ring("x")], spec.ring)


def test_fuzzed_fixtures_only_raise_structured_errors():
    rng = random.Random(0)
    sources = [p.read_bytes() for p in sorted(FIXTURES.glob("*.lcp"))]
    for _ in range(300):
        data = bytearray(rng.choice(sources))
        for _ in range(rng.randint(1, 4)):
            k = rng.randrange(len(data))
            data[k] = rng.randrange(32, 127)
        text = data.decode("ascii")
        try:
            parse_problem(text, require_hypotheses=False)
        except InputError:
            pass
