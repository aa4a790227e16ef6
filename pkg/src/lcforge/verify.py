"""Independent re-verification of stored certificates.

Nothing in a certificate is trusted.  The checks run cheapest first: the
digest seal, the structure, plain arithmetic on the stored numbers, then a
deterministic rebuild from the stored coefficient vectors (no sampling),
and finally an optional replay of the seeded build.  Each stage compares
its recomputed JSON against the stored JSON field by field, so a failure
names the offending path.
"""

from __future__ import annotations

from .certificate import digest_of, from_dict, parse_json, to_dict
from .errors import CertificateFormatError, LcForgeError
from .fields import QQ
from .groebner import Ideal, ideal_membership, step_limit
from .lc_builder import (
    build_boundary,
    center_checks,
    conclusion_for,
    discrepancy_certificate,
    potential_lc_cited_steps,
    verify_snc_locus,
    witness_from_lambdas,
)
from .linalg import determinant
from .model import (
    POTENTIAL_LC_REQUIRES,
    DiscrepancyRecord,
    SPECIAL_LC_REQUIRES,
    LcCertificate,
    SpecialLcCertificate,
)
from .predicates import PredicateVerdict, is_regular_sequence, jacobian_ideal
from .special import build_special_boundary, check_special_inputs, mix_generators, special_cited_steps, subset_sweep


# A hostile certificate can drive the algebra into argument errors; those are
# rejections, never crashes.  ResourceExhausted is an LcForgeError too.
_MALFORMED = (LcForgeError, ValueError, TypeError, KeyError, IndexError, ZeroDivisionError)


def json_diff(stored, rebuilt, path="$", out=None, limit=20) -> list:
    """Paths at which two JSON values differ (at most ``limit``)."""
    if out is None:
        out = []
    if len(out) >= limit:
        return out
    if isinstance(stored, dict) and isinstance(rebuilt, dict):
        for k in sorted(set(stored) | set(rebuilt)):
            if k not in stored or k not in rebuilt:
                out.append(f"{path}.{k}")
            else:
                json_diff(stored[k], rebuilt[k], f"{path}.{k}", out, limit)
    elif isinstance(stored, list) and isinstance(rebuilt, list):
        if len(stored) != len(rebuilt):
            out.append(f"{path} (length {len(stored)} vs {len(rebuilt)})")
        else:
            for i, (a, b) in enumerate(zip(stored, rebuilt)):
                json_diff(a, b, f"{path}[{i}]", out, limit)
    elif stored != rebuilt or type(stored) is not type(rebuilt):
        out.append(path)
    return out


def _fail(stage: str, message: str, mismatches=()) -> PredicateVerdict:
    return PredicateVerdict(
        "reverify", False, {"stage": stage, "message": message, "mismatches": list(mismatches)}, "certificate-reverification"
    )


def _arithmetic(cert) -> list:
    """Checks on the stored numbers that need no algebra at all."""
    problems = []
    d = cert.discrepancy
    r = len(cert.boundary)
    if d.r != r:
        problems.append(f"discrepancy.r = {d.r} but the boundary has {r} divisors")
    if r > cert.config.max_r:
        problems.append(f"r = {r} exceeds config.max_r = {cert.config.max_r}")
    if isinstance(cert, LcCertificate):
        counts = [s.combination.retries for s in cert.witness.steps] + [cert.snc_attempts]
    else:
        counts = [cert.attempts]
    if any(not 0 <= c <= cert.config.max_retries for c in counts):
        problems.append(f"retry counts {counts} exceed config.max_retries = {cert.config.max_retries}")
    if d.canonical_coefficient != r - 1:
        problems.append("discrepancy.canonical_coefficient is not r - 1")
    if len(d.boundary_coefficients) != r or any(c != 1 for c in d.boundary_coefficients):
        problems.append("boundary coefficients are not all 1")
    if len(d.pullback_multiplicity) != r or any(
        len(row) != len(d.components) or any(m != 1 for m in row) for row in d.pullback_multiplicity
    ):
        problems.append("pullback multiplicities are not all 1")
    # a(E_j) = (r - 1) - sum_i coeff_i * mult_ij, recomputed here by hand
    expected = [d.canonical_coefficient - sum(d.boundary_coefficients[i] * row[j] for i, row in enumerate(d.pullback_multiplicity)) for j in range(len(d.components))]
    if list(d.discrepancies) != expected or any(a != -1 for a in d.discrepancies):
        problems.append(f"discrepancies {list(d.discrepancies)} differ from {expected}")
    field = cert.ring.field
    bound = cert.config.sample_bound
    if isinstance(cert, LcCertificate):
        w = cert.witness
        for k, s in enumerate(w.steps):
            g = cert.ring.zero
            for lam, b in zip(s.combination.lambdas, w.basis):
                g = g + b.scale(lam)
            if len(s.combination.lambdas) != len(w.basis) or g != s.combination.g:
                problems.append(f"step {k}: g is not the stated combination of the basis")
            if field == QQ and any(abs(lam) > bound or lam.denominator != 1 for lam in s.combination.lambdas):
                problems.append(f"step {k}: coefficient outside the sample range")
        if not all(ideal_membership(g, cert.center) for g in w.gens):
            problems.append("a boundary equation is not in the center ideal")
    else:
        m = cert.matrix
        if determinant(m.entries, field) != m.determinant or m.determinant == 0:
            problems.append("mixing matrix determinant is wrong or zero")
    return problems


def _rebuild_potential(cert: LcCertificate) -> LcCertificate:
    X, Z = cert.ambient, cert.center
    if cert.sing_mode == "declared":
        sing = cert.sing_ambient
    elif cert.sing_mode == "projective-space":
        if not X.is_zero():
            raise LcForgeError("sing mode 'projective-space' with a nonzero ambient ideal")
        sing = Ideal([X.ring.one], X.ring)
    elif cert.sing_mode == "computed":
        sing = jacobian_ideal(X)
    else:
        raise CertificateFormatError(f"unknown singular-locus mode {cert.sing_mode!r}", "$.witness.sing_ambient.mode")
    checks = center_checks(X, Z, sing)
    w = witness_from_lambdas(X, Z, [s.combination.lambdas for s in cert.witness.steps], [s.combination.retries for s in cert.witness.steps])
    snc = verify_snc_locus(w, sing)
    disc = discrepancy_certificate(w)
    conclusion = conclusion_for(
        cert.hypotheses,
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
        ring=cert.ring,
        ambient=X,
        center=Z,
        sing_ambient=sing,
        sing_mode=cert.sing_mode,
        witness=w,
        center_checks=checks,
        snc=snc,
        snc_attempts=cert.snc_attempts,
        discrepancy=disc,
        hypotheses=cert.hypotheses,
        cited_steps=potential_lc_cited_steps(),
        conclusion=conclusion,
        seed=cert.seed,
        config=cert.config,
        builder=cert.builder,
    )


def _rebuild_special(cert: SpecialLcCertificate) -> SpecialLcCertificate:
    X, F = cert.ambient, list(cert.generators)
    if cert.sing_mode == "declared":
        sing = cert.sing_ambient
    elif cert.sing_mode == "projective-space":
        if not X.is_zero():
            raise LcForgeError("sing mode 'projective-space' with a nonzero ambient ideal")
        sing = Ideal([X.ring.one], X.ring)
    elif cert.sing_mode == "computed":
        sing = jacobian_ideal(X)
    else:
        raise CertificateFormatError(f"unknown singular-locus mode {cert.sing_mode!r}", "$.witness.sing_ambient.mode")
    checks = check_special_inputs(X, F, sing, cert.config)
    W = X + F
    if W != cert.center:
        raise LcForgeError("stored center is not the ideal of the stored generators")
    G = mix_generators(F, cert.matrix)
    mixed_checks = (is_regular_sequence(G, X),)
    reports = subset_sweep(G, W, X)
    verdicts = list(checks) + list(mixed_checks) + [v for rep in reports for v in (rep.reduced, rep.normal, rep.smooth_away)]
    conclusion = conclusion_for(
        cert.hypotheses,
        SPECIAL_LC_REQUIRES,
        verdicts,
        "(X, Delta) is log canonical and W is a log canonical center",
        {
            "exceptional_discrepancy": -1,
            "pair_claimed_lc_globally": True,
            "du_bois_steps": "cited",
            "char_caveat": X.ring.field.characteristic > 0,
        },
    )
    return SpecialLcCertificate(
        ring=cert.ring,
        ambient=X,
        center=W,
        generators=tuple(F),
        sing_ambient=sing,
        sing_mode=cert.sing_mode,
        input_checks=checks,
        matrix=cert.matrix,
        mixed=tuple(G),
        mixed_checks=mixed_checks,
        reports=reports,
        attempts=cert.attempts,
        discrepancy=DiscrepancyRecord.derive(len(F), ["center"]),
        hypotheses=cert.hypotheses,
        cited_steps=special_cited_steps(),
        conclusion=conclusion,
        seed=cert.seed,
        config=cert.config,
        builder=cert.builder,
    )


def _replay(cert):
    if isinstance(cert, LcCertificate):
        sing = cert.sing_ambient if cert.sing_mode == "declared" else None
        return build_boundary(cert.ambient, cert.center, cert.hypotheses, cert.seed, cert.config, sing)
    sing = cert.sing_ambient if cert.sing_mode == "declared" else None
    return build_special_boundary(cert.ambient, cert.generators, cert.hypotheses, cert.seed, cert.config, sing)


def _check_inputs(cert, inputs) -> list:
    """Compare the certificate with a parsed problem file."""
    problems = []
    if inputs.ring.names != cert.ring.names or inputs.field != cert.ring.field:
        return ["ring differs from the problem file"]
    if inputs.ambient_ideal() != cert.ambient:
        problems.append("ambient ideal differs from the problem file")
    if isinstance(cert, LcCertificate):
        if inputs.center_ideal() != cert.center:
            problems.append("center ideal differs from the problem file")
    elif list(inputs.center) != list(cert.generators):
        problems.append("W generators differ from the problem file")
    if set(inputs.declared.declared) != set(cert.hypotheses.declared):
        problems.append("declared hypotheses differ from the problem file")
    sing = inputs.sing_ambient_ideal()
    if sing is not None and (cert.sing_mode != "declared" or sing != cert.sing_ambient):
        problems.append("declared singular locus differs from the problem file")
    if inputs.mode in ("potential-lc", "special-lc") and inputs.mode != cert.kind:
        problems.append(f"problem mode {inputs.mode} but certificate kind {cert.kind}")
    return problems


def reverify(data, inputs=None, replay: bool = True, check_digest: bool = True) -> PredicateVerdict:
    """Re-check certificate bytes (or text) from scratch.

    ``inputs`` is an optional parsed problem the certificate must match.
    ``replay`` reruns the seeded build and demands identical output.
    ``check_digest=False`` skips the seal so that semantic checks can be
    exercised on hand-edited certificates.
    """
    try:
        obj = parse_json(data)
    except CertificateFormatError as exc:
        return _fail("parse", str(exc))
    if check_digest and obj.get("digest") != digest_of(obj):
        return _fail("digest", "digest does not match the certificate contents", ["$.digest"])
    try:
        cert = from_dict(obj)
    except _MALFORMED as exc:
        return _fail("structure", str(exc), [getattr(exc, "position", None) or "$"])
    stored = {k: v for k, v in obj.items() if k != "digest"}
    canonical = to_dict(cert)
    diff = json_diff(stored, canonical)
    if diff:
        return _fail("structure", "certificate is not in canonical form", diff)
    if inputs is not None:
        problems = _check_inputs(cert, inputs)
        if problems:
            return _fail("inputs", "; ".join(problems))
    with step_limit(cert.config.step_limit):
        try:
            problems = _arithmetic(cert)
        except _MALFORMED as exc:
            problems = [str(exc)]
        if problems:
            return _fail("arithmetic", "; ".join(problems))
        try:
            rebuilt = _rebuild_potential(cert) if isinstance(cert, LcCertificate) else _rebuild_special(cert)
        except _MALFORMED as exc:
            return _fail("rebuild", str(exc))
        diff = json_diff(stored, to_dict(rebuilt))
        if diff:
            return _fail("rebuild", "recomputed certificate differs", diff)
        if replay:
            try:
                again = _replay(cert)
            except _MALFORMED as exc:
                return _fail("replay", str(exc))
            diff = json_diff(stored, to_dict(again))
            if diff:
                return _fail("replay", "seeded rebuild produced a different certificate", diff)
    return PredicateVerdict(
        "reverify",
        True,
        {"stage": "replay" if replay else "rebuild", "kind": cert.kind, "conclusion": cert.conclusion is not None},
        "certificate-reverification",
    )
