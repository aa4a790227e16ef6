"""Boundary construction making a subvariety a log canonical center.

Pipeline: embed Z as a component of a reduced complete intersection W cut
out in X by generic degree-d elements of I_Z, take Delta = D_1 + ... + D_r
with D_i = V(g_i), verify transversality away from Sing W and Sing X, and
record the discrepancy arithmetic on the blow-up along W.

Genericity is "sample, verify, retry": coefficient vectors are drawn at
random and kept only when every predicate passes, so nothing unverified is
ever certified.
"""

from __future__ import annotations

import random
from itertools import combinations

from . import __version__
from .errors import GenericityFailure, InputError, LcForgeError
from .groebner import (
    Ideal,
    affine_dimension,
    ideal_membership,
    projective_dimension,
    quotient_by_ideal,
    step_limit,
)
from .linalg import graded_piece_basis, jacobian_matrix, minors_ideal
from .model import (
    POTENTIAL_LC_REQUIRES,
    BuildConfig,
    CitedStep,
    CompleteIntersectionWitness,
    DiscrepancyRecord,
    GenericCombination,
    HypothesisSet,
    LcCertificate,
    WitnessStep,
)
from .predicates import (
    PredicateVerdict,
    is_component,
    is_generically_reduced,
    is_non_zerodivisor,
    jacobian_ideal,
    variety_containment,
)

BUILDER = f"lcforge {__version__}"


def degree_bound(Z: Ideal) -> int:
    """Largest degree in the reduced grevlex basis of Z."""
    if Z.is_zero():
        raise InputError("degree bound of the zero ideal")
    return max(g.total_degree() for g in Z.canonical())


def basis_id(d: int) -> str:
    return f"grevlex-rref:deg={d}"


def center_basis(Z: Ideal, d: int) -> list:
    return graded_piece_basis(Z.canonical(), d)


def combine(basis, lambdas):
    ring = basis[0].ring
    g = ring.zero
    for lam, f in zip(lambdas, basis):
        if lam:
            g = g + f.scale(lam)
    return g


def check_combination(g, current: Ideal, ambient: Ideal) -> tuple:
    """The two genericity conditions on a candidate g."""
    return (
        is_non_zerodivisor(g, current),
        is_generically_reduced(current + g, ambient),
    )


def pick_generic_combination(basis, current: Ideal, Z: Ideal, ambient: Ideal, rng, config: BuildConfig):
    """Sample g = sum lambda_i f_i until g is a non-zerodivisor modulo
    ``current`` and ``current + (g)`` is generically reduced.

    Returns ``(GenericCombination, verdicts)``.
    """
    field = Z.ring.field
    d = basis[0].total_degree() if basis else 0
    failures = []
    for attempt in range(config.max_retries + 1):
        lambdas = tuple(field.sample(rng, config.sample_bound) for _ in basis)
        g = combine(basis, lambdas)
        if g.is_zero():
            failures.append({"lambdas": lambdas, "reason": "zero combination"})
            continue
        verdicts = check_combination(g, current, ambient)
        if all(verdicts):
            return GenericCombination(lambdas, basis_id(d), g, attempt), verdicts
        failures.append({"lambdas": lambdas, "verdicts": verdicts})
    raise GenericityFailure(
        f"no admissible combination after {config.max_retries} retries", failures
    )


def _dimension_verdict(before: int, after: int) -> PredicateVerdict:
    return PredicateVerdict(
        "dimension_drop",
        after == before - 1,
        {"before": before, "after": after},
        "regular-sequence-dimension-drop",
    )


def _check_embedding_inputs(X: Ideal, Z: Ideal) -> int:
    X.require_homogeneous("ambient ideal")
    Z.require_homogeneous("center ideal")
    if Z.is_unit():
        raise InputError("center ideal is the unit ideal (empty subvariety)")
    if not all(ideal_membership(f, Z) for f in X.gens):
        raise InputError("center is not contained in the ambient variety")
    r = projective_dimension(X) - projective_dimension(Z)
    if r <= 0:
        raise InputError(f"codimension {r}: the center must be a proper subvariety")
    return r


def residual_ideal(W: Ideal, Z: Ideal):
    """Canonical basis of W : I_Z, or None when that is the unit ideal."""
    res = quotient_by_ideal(W, Ideal(Z.canonical(), Z.ring))
    if res.is_unit():
        return None
    return tuple(res.canonical())


def _finish_witness(X, Z, d, basis, steps, chain) -> CompleteIntersectionWitness:
    W = X + [s.combination.g for s in steps]
    comp = is_component(Z, W)
    residual = residual_ideal(W, Z) if comp.passed else None
    return CompleteIntersectionWitness(
        X, Z, d, tuple(basis), tuple(steps), tuple(chain), comp, residual
    )


def embed_in_ci(X: Ideal, Z: Ideal, rng, config: BuildConfig = BuildConfig()) -> CompleteIntersectionWitness:
    """Find a reduced complete intersection W in X having Z as a component."""
    r = _check_embedding_inputs(X, Z)
    d = degree_bound(Z)
    basis = center_basis(Z, d)
    current = X
    chain = [affine_dimension(X)]
    steps = []
    for _ in range(r):
        comb, verdicts = pick_generic_combination(basis, current, Z, X, rng, config)
        current = current + comb.g
        chain.append(affine_dimension(current))
        drop = _dimension_verdict(chain[-2], chain[-1])
        if not drop.passed:
            raise GenericityFailure("dimension did not drop by one", [drop])
        steps.append(WitnessStep(comb, verdicts + (drop,), chain[-1]))
    w = _finish_witness(X, Z, d, basis, steps, chain)
    if not w.component.passed:
        raise GenericityFailure("center is not a component of the chosen complete intersection", [w.component])
    return w


def witness_from_lambdas(X: Ideal, Z: Ideal, lambdas_list, retries=None) -> CompleteIntersectionWitness:
    """Rebuild a witness from stored coefficient vectors, with no sampling.

    Verdicts are recomputed; a failing one is kept in the witness rather
    than raised, so a verifier can diff it against the stored value.
    """
    _check_embedding_inputs(X, Z)
    d = degree_bound(Z)
    basis = center_basis(Z, d)
    current = X
    chain = [affine_dimension(X)]
    steps = []
    for k, lambdas in enumerate(lambdas_list):
        if len(lambdas) != len(basis):
            raise InputError(f"step {k}: {len(lambdas)} coefficients for a basis of size {len(basis)}")
        g = combine(basis, lambdas)
        if g.is_zero():
            raise InputError(f"step {k}: coefficients give the zero polynomial")
        verdicts = check_combination(g, current, X)
        current = current + g
        chain.append(affine_dimension(current))
        drop = _dimension_verdict(chain[-2], chain[-1])
        comb = GenericCombination(tuple(lambdas), basis_id(d), g, retries[k] if retries else 0)
        steps.append(WitnessStep(comb, verdicts + (drop,), chain[-1]))
    return _finish_witness(X, Z, d, basis, steps, chain)


def discrepancy_certificate(w: CompleteIntersectionWitness) -> DiscrepancyRecord:
    """Discrepancy of every known exceptional prime over W for (X, D_1+...+D_r)."""
    if not w.verified:
        raise LcForgeError("refusing to certify discrepancies for an unverified witness")
    components = ["center"] + (["residual"] if w.residual is not None else [])
    return DiscrepancyRecord.derive(w.r, components)


def ambient_singular_locus(X: Ideal, declared: Ideal | None = None):
    """Ideal of Sing X and how it was obtained."""
    if declared is not None:
        return declared, "declared"
    if X.is_zero():
        return Ideal([X.ring.one], X.ring), "projective-space"
    return jacobian_ideal(X), "computed"


def non_transversality_ideal(X: Ideal, gens, subset) -> Ideal:
    """Where the divisors indexed by ``subset`` fail to be smooth and to meet
    transversally inside X: X + (g_i) + maximal-size Jacobian minors."""
    ring = X.ring
    chosen = [gens[i] for i in subset]
    ambient_codim = ring.nvars - affine_dimension(X)
    rows = chosen + list(X.gens)
    k = len(chosen) + ambient_codim
    I = X + chosen
    M = jacobian_matrix(rows)
    if k > min(len(M), ring.nvars):
        return I
    return I + minors_ideal(M, k, ring)


def verify_snc_locus(w: CompleteIntersectionWitness, sing_ambient: Ideal) -> PredicateVerdict:
    """(X, Delta) is snc away from Sing W and Sing X.

    For every nonempty set S of boundary components, the locus where the
    D_i (i in S) are singular or meet non-transversally must lie inside
    V(Sing W) union V(Sing X).
    """
    gens = w.gens
    sing_w = jacobian_ideal(w.ideal)
    bad = sing_w * sing_ambient
    failing = []
    for size in range(1, len(gens) + 1):
        for S in combinations(range(len(gens)), size):
            nt = non_transversality_ideal(w.ambient, gens, S)
            if not variety_containment(nt, bad).passed:
                failing.append(list(S))
    return PredicateVerdict(
        "snc_away_from_singular_loci",
        not failing,
        {"failing_subsets": failing, "singular_basis": list(sing_w.canonical())},
        "snc-away-from-singular-loci",
    )


def center_checks(X: Ideal, Z: Ideal, sing_ambient: Ideal) -> tuple:
    """Necessary conditions on the declared-prime center."""
    reduced = is_generically_reduced(Z, X)
    inside_sing = variety_containment(Z, sing_ambient)
    not_in_sing = PredicateVerdict(
        "center_not_in_singular_ambient",
        not inside_sing.passed,
        dict(inside_sing.evidence),
        "center-meets-smooth-locus",
    )
    return reduced, not_in_sing


def potential_lc_cited_steps() -> tuple:
    return (
        CitedStep(
            "cohen-macaulay-reduction",
            "Being an lc center is local at the generic point of the center, so X may be replaced by a Cohen-Macaulay open subset meeting it.",
            ("X-CM",),
        ),
        CitedStep(
            "reduced-from-r0-and-s1",
            "A complete intersection in a Cohen-Macaulay ambient is S1; with the verified R0 condition it is reduced.",
            ("X-CM",),
            ("Serre's criterion",),
        ),
        CitedStep(
            "center-is-component",
            "A prime containing a reduced equidimensional ideal of the same height is one of its minimal primes.",
            ("Z-prime",),
        ),
        CitedStep(
            "blowup-canonical-class",
            "On the normalized blow-up along W, K_Y = f^*K_X + (r-1) times each exceptional prime.",
            ("X-Q-Gorenstein", "X-CM", "X-normal"),
            ("Hartshorne II.8.24(b)", "Hartshorne Ex. II.8.5"),
        ),
        CitedStep(
            "pullback-multiplicity-one",
            "Each D_i is smooth along the smooth locus of W, hence contains every component of W with multiplicity one.",
            (),
        ),
        CitedStep(
            "lc-at-generic-point",
            "Near the generic point of the center, (X, Delta) is snc with reduced boundary, hence lc.",
            ("X-normal", "not-in-SingX"),
        ),
    )


def conclusion_for(hypotheses: HypothesisSet, required, verdicts, statement: str, extra=None):
    """The conclusion record, or None when anything is missing or failing."""
    if hypotheses.missing(required):
        return None
    if not all(v.passed for v in verdicts):
        return None
    out = {"statement": statement, "conditional_on": sorted(required)}
    out.update(extra or {})
    return out


def build_boundary(
    X: Ideal,
    Z: Ideal,
    declared: HypothesisSet,
    seed: int = 0,
    config: BuildConfig = BuildConfig(),
    sing_ambient: Ideal | None = None,
) -> LcCertificate:
    """Construct Delta = D_1 + ... + D_r making Z an lc center of (X, Delta)."""
    rng = random.Random(seed)
    with step_limit(config.step_limit):
        try:
            sing_x, sing_mode = ambient_singular_locus(X, sing_ambient)
            checks = center_checks(X, Z, sing_x)
        except LcForgeError as exc:
            raise exc.with_stage("center-checks")
        if not checks[1].passed:
            raise InputError("the center lies inside the singular locus of the ambient").with_stage("center-checks")
        if not checks[0].passed:
            raise InputError("the center is not generically reduced").with_stage("center-checks")
        snc = None
        failures = []
        for attempt in range(config.max_retries + 1):
            try:
                w = embed_in_ci(X, Z, rng, config)
            except LcForgeError as exc:
                raise exc.with_stage("embed")
            if len(w.gens) > config.max_r:
                raise InputError(f"r = {len(w.gens)} exceeds max_r = {config.max_r} (2^r subset sweep)").with_stage("embed")
            snc = verify_snc_locus(w, sing_x)
            if snc.passed:
                break
            failures.append(snc)
        else:
            raise GenericityFailure("no transversal boundary found", failures).with_stage("snc")
        disc = discrepancy_certificate(w)
    conclusion = conclusion_for(
        declared,
        POTENTIAL_LC_REQUIRES,
        list(checks) + [snc, w.component],
        "the center is a log canonical center of (X, Delta)",
        {
            "exceptional_discrepancy": -1,
            "pair_claimed_lc_globally": False,
            "cocertified_components": ["residual"] if w.residual is not None else [],
            "char_caveat": Z.ring.field.characteristic > 0,
        },
    )
    return LcCertificate(
        ring=Z.ring,
        ambient=X,
        center=Z,
        sing_ambient=sing_x,
        sing_mode=sing_mode,
        witness=w,
        center_checks=checks,
        snc=snc,
        snc_attempts=attempt,
        discrepancy=disc,
        hypotheses=declared,
        cited_steps=potential_lc_cited_steps(),
        conclusion=conclusion,
        seed=seed,
        config=config,
        builder=BUILDER,
    )
