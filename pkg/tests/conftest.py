from __future__ import annotations

from pathlib import Path

import pytest
from hypothesis import strategies as st

from lcforge.fields import GF, QQ  # noqa: F401  (re-exported to tests)
from lcforge.groebner import Ideal
from lcforge.rings import Polynomial, RingContext

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def fixture_text(name: str) -> str:
    return (FIXTURES / f"{name}.lcp").read_text()


@pytest.fixture
def xyz():
    return RingContext(["x", "y", "z"])


@pytest.fixture
def xyzw():
    return RingContext(["x", "y", "z", "w"])


def ideal(ring, *texts):
    return Ideal([ring(t) for t in texts], ring)


def twisted_cubic(ring):
    return ideal(ring, "x*z - y^2", "y*w - z^2", "x*w - y*z")


def random_form(ring, degree, rng, terms=3, bound=5):
    """A random homogeneous polynomial of the given degree (may be zero)."""
    from lcforge.rings import monomials_of_degree

    mons = monomials_of_degree(ring.nvars, degree)
    out = {}
    for _ in range(terms):
        out[rng.choice(mons)] = rng.randint(-bound, bound)
    return Polynomial(ring, out)


def polys(ring, max_degree=3, max_terms=4, bound=6):
    """Hypothesis strategy for small polynomials over ``ring``."""
    exps = st.tuples(*[st.integers(0, max_degree) for _ in range(ring.nvars)])
    if ring.field == QQ:
        coeffs = st.integers(-bound, bound)
    else:
        coeffs = st.integers(0, ring.field.p - 1)
    return st.dictionaries(exps, coeffs, max_size=max_terms).map(lambda d: Polynomial(ring, d))


_ACCEPTANCE: list[str] = []


@pytest.fixture(scope="session")
def acceptance_log():
    return _ACCEPTANCE


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE:
            terminalreporter.write_line(line)
