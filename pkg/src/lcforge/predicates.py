"""Checkable hypotheses as predicates that carry re-runnable evidence.

Every predicate returns a :class:`PredicateVerdict`.  Evidence values are
ints, strings, or canonical reduced grevlex bases (keys ending in
``_basis``) so a verifier can re-run the predicate and compare verbatim.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import InputError
from .groebner import (
    Ideal,
    affine_dimension,
    ideal_membership,
    ideal_quotient,
    projective_dimension,
    radical_membership,
    saturate_irrelevant,
)
from .linalg import jacobian_matrix, minors_ideal


@dataclass(frozen=True)
class PredicateVerdict:
    name: str
    passed: bool
    evidence: dict = field(default_factory=dict)
    citation: str = ""

    @property
    def verdict(self) -> str:
        return "pass" if self.passed else "fail"

    def __bool__(self):
        return self.passed


def _basis(I: Ideal) -> list:
    return list(I.canonical())


def is_non_zerodivisor(g, I: Ideal) -> PredicateVerdict:
    """g is a non-zerodivisor on k[x]/I iff I : g == I."""
    if g.is_zero():
        raise ValueError("the zero polynomial is always a zerodivisor")
    Q = ideal_quotient(I, g)
    passed = Q == I
    evidence = {"ideal_basis": _basis(I), "quotient_basis": _basis(Q)}
    if not passed:
        witness = next((h for h in Q.canonical() if not ideal_membership(h, I)), None)
        evidence["witness_basis"] = [witness] if witness is not None else []
    return PredicateVerdict("non_zerodivisor", passed, evidence, "nzd-generic-combination")


def is_regular_sequence(gs, ambient: Ideal) -> PredicateVerdict:
    """Each element cuts the dimension by exactly one (homogeneous, CM ambient)."""
    gs = list(gs)
    d0 = affine_dimension(ambient)
    if d0 < 0:
        raise InputError("regular sequence over the unit ideal")
    chain = [d0]
    current = ambient
    passed = True
    for s, g in enumerate(gs, start=1):
        if g.is_zero():
            raise ValueError("zero element in a regular sequence")
        current = current + g
        d = affine_dimension(current)
        chain.append(d)
        if d != d0 - s:
            passed = False
            break
    return PredicateVerdict(
        "regular_sequence", passed, {"dimension_chain": chain}, "regular-sequence-dimension-drop"
    )


def _codim(I: Ideal) -> int:
    d = affine_dimension(I)
    if d < 0:
        raise InputError("singular locus of the unit ideal")
    return I.ring.nvars - d


def jacobian_ideal(I: Ideal, ambient: Ideal | None = None) -> Ideal:
    """I plus the c x c minors of the Jacobian of I's generators, c = codim V(I).

    Not saturated: its projective vanishing locus is Sing V(I), possibly
    together with the cone vertex.  Every consumer only compares dimensions
    or tests projective containment, where the vertex is invisible.
    """
    gens = list(I.gens)
    if ambient is not None:
        gens += [g for g in ambient.gens if g not in I.gens]
    J0 = Ideal(gens, I.ring)
    c = _codim(J0)
    M = jacobian_matrix(gens)
    if c > min(len(M), I.ring.nvars):
        return J0
    return J0 + minors_ideal(M, c, I.ring)


def singular_locus_ideal(I: Ideal, ambient: Ideal | None = None, saturate: bool = True) -> Ideal:
    """Ideal whose vanishing locus in P^n is the non-smooth locus of V(I)."""
    J = jacobian_ideal(I, ambient)
    if saturate:
        return saturate_irrelevant(J)
    return J


def is_generically_reduced(I: Ideal, ambient: Ideal | None = None) -> PredicateVerdict:
    """R0 check: the singular locus misses every generic point of V(I).

    Valid for equidimensional I (complete intersections); together with S1,
    which complete intersections in a CM ambient inherit, it gives reducedness.
    """
    J = jacobian_ideal(I, ambient)
    d_sing = affine_dimension(J)
    d = affine_dimension(I)
    return PredicateVerdict(
        "generically_reduced",
        d_sing < d,
        {"dimension": d, "singular_dimension": d_sing, "singular_basis": _basis(J)},
        "generic-smoothness-r0",
    )


def is_normal_ci(I: Ideal, ambient: Ideal | None = None) -> PredicateVerdict:
    """R1 check: Sing V(I) has codimension >= 2 in V(I).  S2 is not computed;
    for complete intersections it follows from the declared CM hypothesis."""
    J = jacobian_ideal(I, ambient)
    d_sing = affine_dimension(J)
    d = affine_dimension(I)
    # affine dimension <= 0 for a homogeneous ideal means projectively empty
    passed = d_sing <= 0 or d - d_sing >= 2
    return PredicateVerdict(
        "normal",
        passed,
        {
            "dimension": d,
            "singular_dimension": d_sing,
            "singular_basis": _basis(J),
            "s2": "declared:X-CM",
        },
        "serre-normality-r1",
    )


def variety_containment(A: Ideal, B: Ideal) -> PredicateVerdict:
    """V(A) subset of V(B) in projective space.

    Tested generator by generator: a nonconstant homogeneous b vanishes on
    V(A) iff b lies in sqrt(A).  A nonzero constant in B asks for V(A)
    to be empty, i.e. A of affine dimension <= 0.
    """
    failing = None
    a_dim = None
    for b in B.canonical():
        if b.is_constant():
            if a_dim is None:
                a_dim = affine_dimension(A)
            if a_dim > 0:
                failing = b
                break
            continue
        if ideal_membership(b, A) or radical_membership(b, A):
            continue
        failing = b
        break
    evidence = {"failing_basis": [failing] if failing is not None else []}
    return PredicateVerdict("containment", failing is None, evidence, "variety-containment")


def is_component(Z: Ideal, J: Ideal) -> PredicateVerdict:
    """Z (declared prime) is an irreducible component of the reduced CI V(J)."""
    contained = all(ideal_membership(g, Z) for g in J.gens)
    dz = projective_dimension(Z)
    dj = projective_dimension(J)
    return PredicateVerdict(
        "component",
        contained and dz == dj,
        {"contained": int(contained), "center_dimension": dz, "ci_dimension": dj},
        "component-of-reduced-ci",
    )
