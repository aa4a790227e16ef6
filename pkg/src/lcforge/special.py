"""Log canonical pairs from special (equal-degree) complete intersections.

The generators of I_W are remixed by a random invertible matrix and every
partial intersection D_S is checked to be reduced, normal and smooth away
from Sing W.  The Du Bois steps that turn those facts into an lc pair are
recorded as citations gated on declared hypotheses; they are never computed.
"""

from __future__ import annotations

import random
from concurrent.futures import ThreadPoolExecutor
from itertools import combinations

from .errors import InputError, LcForgeError, SpecialVerificationFailure
from .groebner import Ideal, ideal_membership, step_limit
from .lc_builder import BUILDER, ambient_singular_locus, conclusion_for
from .linalg import determinant
from .model import (
    SPECIAL_LC_REQUIRES,
    BuildConfig,
    CitedStep,
    DiscrepancyRecord,
    HypothesisSet,
    MixingMatrix,
    SpecialLcCertificate,
    SubsetReport,
)
from .predicates import (
    PredicateVerdict,
    is_generically_reduced,
    is_normal_ci,
    is_regular_sequence,
    jacobian_ideal,
    variety_containment,
)


def sample_invertible_matrix(r: int, rng, field, config: BuildConfig = BuildConfig(), sample_set=None, seed: int = 0) -> MixingMatrix:
    """Draw r x r matrices from ``sample_set`` until one is invertible."""
    if r < 1:
        raise ValueError("matrix size must be positive")
    values = list(sample_set) if sample_set is not None else field.sample_set(config.sample_bound)
    values = [field(v) for v in values]
    for _ in range(config.matrix_retries):
        entries = tuple(tuple(rng.choice(values) for _ in range(r)) for _ in range(r))
        det = determinant(entries, field)
        if det != 0:
            return MixingMatrix(entries, seed, det)
    raise SpecialVerificationFailure(
        f"no invertible {r}x{r} matrix after {config.matrix_retries} draws from {len(set(values))} values"
    )


def mix_generators(F, matrix: MixingMatrix) -> list:
    """G_i = sum_j mu_ij F_j, with ideal(G) == ideal(F) asserted."""
    F = list(F)
    if len(F) != matrix.r:
        raise InputError(f"{len(F)} generators for a {matrix.r}x{matrix.r} matrix")
    _require_special(F)
    field = F[0].ring.field
    if determinant(matrix.entries, field) == 0:
        raise InputError("mixing matrix is singular")
    ring = F[0].ring
    G = []
    for row in matrix.entries:
        g = ring.zero
        for mu, f in zip(row, F):
            if mu:
                g = g + f.scale(mu)
        G.append(g)
    IF, IG = Ideal(F, ring), Ideal(G, ring)
    if not (all(ideal_membership(g, IF) for g in G) and all(ideal_membership(f, IG) for f in F)):
        raise LcForgeError("mixed generators do not generate the same ideal")
    return G


def _require_special(F):
    degs = set()
    for f in F:
        d = f.homogeneous_degree()
        if d is None:
            raise InputError(f"generator {f} is not homogeneous")
        degs.add(d)
    if len(degs) > 1:
        raise InputError(f"not a special complete intersection: generator degrees {sorted(degs)}")


def _declared(name: str, hyp: str) -> PredicateVerdict:
    return PredicateVerdict(name, True, {"declared": hyp}, "declared-hypothesis")


def verify_subset_ci(G, S, W: Ideal, X: Ideal, sing_w: Ideal | None = None) -> SubsetReport:
    """Reducedness, normality and smoothness away from Sing W for D_S."""
    S = tuple(sorted(S))
    if not S:
        return SubsetReport(
            S,
            tuple(X.canonical()) if not X.is_zero() else (),
            _declared("generically_reduced", "X-normal"),
            _declared("normal", "X-normal"),
            _declared("smooth_away_from_sing_w", "not-in-SingX"),
        )
    D = X + [G[i] for i in S]
    reduced = is_generically_reduced(D, X)
    normal = is_normal_ci(D, X)
    if len(S) == len(G):
        smooth = PredicateVerdict("smooth_away_from_sing_w", True, {"vacuous": 1}, "smooth-away-from-sing-w")
    else:
        if sing_w is None:
            sing_w = jacobian_ideal(W)
        inner = variety_containment(jacobian_ideal(D, X), sing_w)
        smooth = PredicateVerdict("smooth_away_from_sing_w", inner.passed, dict(inner.evidence), "smooth-away-from-sing-w")
    return SubsetReport(S, tuple(D.canonical()), reduced, normal, smooth)


def all_subsets(r: int):
    return [S for k in range(r + 1) for S in combinations(range(r), k)]


def subset_sweep(G, W: Ideal, X: Ideal, workers: int = 1) -> tuple:
    """Reports for all 2^r subsets, in a fixed order regardless of scheduling."""
    sing_w = jacobian_ideal(W)
    subsets = all_subsets(len(G))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            reports = list(pool.map(lambda S: verify_subset_ci(G, S, W, X, sing_w), subsets))
    else:
        reports = [verify_subset_ci(G, S, W, X, sing_w) for S in subsets]
    return tuple(reports)


def special_cited_steps() -> tuple:
    return (
        CitedStep(
            "partial-intersections-du-bois",
            "Descending induction from W: each D_S is Du Bois near W by deformation of Du Bois singularities, smooth elsewhere, and (D_S, D_S') is a Du Bois pair by the two-out-of-three property.",
            ("W-lc", "W-irreducible"),
            (
                "Kollar-Kovacs 2010, Thm 1.4 (lc implies Du Bois)",
                "Kovacs-Schwede 2011, Thm 4.1",
                "Kollar 2013, Prop. 6.15",
            ),
        ),
        CitedStep(
            "boundary-union-du-bois",
            "With X and every intersection of the D_i reduced and Du Bois, the pair (X, D_1 u ... u D_r) is Du Bois, by induction and excision.",
            ("X-lc", "X-normal"),
            ("Kollar 2013, Prop. 6.17", "Kollar-Kovacs 2010, Thm 1.4 (lc implies Du Bois)"),
        ),
        CitedStep(
            "du-bois-pair-to-lc-pair",
            "A Du Bois pair (X, Sigma) on normal X with reduced Delta supported on Sigma and K_X + Delta Cartier is log canonical.",
            ("X-normal", "K_X-Cartier"),
            ("Graf-Kovacs 2014, Thm 1.4",),
        ),
        CitedStep(
            "w-is-lc-center",
            "W is a component of the complete intersection cut by the G_i, so the exceptional prime over W has discrepancy -1.",
            ("X-CM", "W-irreducible", "not-in-SingX"),
        ),
    )


def check_special_inputs(X: Ideal, F, sing_x: Ideal, config: BuildConfig) -> tuple:
    """Verified preconditions on W = V(F) inside X."""
    _require_special(F)
    r = len(F)
    if r < 1:
        raise InputError("W needs at least one generator")
    if r > config.max_r:
        raise InputError(f"r = {r} exceeds max_r = {config.max_r} (2^r subset sweep)")
    ring = F[0].ring
    W = X + list(F)
    regular = is_regular_sequence(F, X)
    reduced = is_generically_reduced(W, X)
    inside = variety_containment(W, sing_x)
    not_in_sing = PredicateVerdict(
        "center_not_in_singular_ambient", not inside.passed, dict(inside.evidence), "center-meets-smooth-locus"
    )
    if not ring == X.ring:
        raise InputError("W and X live in different rings")
    return regular, reduced, not_in_sing


def build_special_boundary(
    X: Ideal,
    W_gens,
    declared: HypothesisSet,
    seed: int = 0,
    config: BuildConfig = BuildConfig(),
    sing_ambient: Ideal | None = None,
    sample_set=None,
) -> SpecialLcCertificate:
    """Remix I_W's generators so that every partial intersection is good."""
    F = [f for f in W_gens]
    if not F:
        raise InputError("W needs at least one generator")
    ring = F[0].ring
    field = ring.field
    rng = random.Random(seed)
    with step_limit(config.step_limit):
        try:
            sing_x, sing_mode = ambient_singular_locus(X, sing_ambient)
            checks = check_special_inputs(X, F, sing_x, config)
        except LcForgeError as exc:
            raise exc.with_stage("input-checks")
        for v in checks:
            if not v.passed:
                raise SpecialVerificationFailure(f"input check {v.name} failed").with_stage("input-checks")
        W = X + F
        failures = []
        for attempt in range(config.max_retries + 1):
            matrix = sample_invertible_matrix(len(F), rng, field, config, sample_set, seed)
            G = mix_generators(F, matrix)
            mixed_checks = (is_regular_sequence(G, X),)
            reports = subset_sweep(G, W, X, config.workers)
            bad = [list(rep.subset) for rep in reports if not rep.passed]
            if mixed_checks[0].passed and not bad:
                break
            failures.append(bad)
        else:
            raise SpecialVerificationFailure(
                f"subset reports kept failing after {config.max_retries} retries", failures
            ).with_stage("subset-sweep")
        disc = DiscrepancyRecord.derive(len(F), ["center"])
    verdicts = list(checks) + list(mixed_checks) + [v for rep in reports for v in (rep.reduced, rep.normal, rep.smooth_away)]
    conclusion = conclusion_for(
        declared,
        SPECIAL_LC_REQUIRES,
        verdicts,
        "(X, Delta) is log canonical and W is a log canonical center",
        {
            "exceptional_discrepancy": -1,
            "pair_claimed_lc_globally": True,
            "du_bois_steps": "cited",
            "char_caveat": field.characteristic > 0,
        },
    )
    return SpecialLcCertificate(
        ring=ring,
        ambient=X,
        center=W,
        generators=tuple(F),
        sing_ambient=sing_x,
        sing_mode=sing_mode,
        input_checks=checks,
        matrix=matrix,
        mixed=tuple(G),
        mixed_checks=mixed_checks,
        reports=reports,
        attempts=attempt,
        discrepancy=disc,
        hypotheses=declared,
        cited_steps=special_cited_steps(),
        conclusion=conclusion,
        seed=seed,
        config=config,
        builder=BUILDER,
    )
