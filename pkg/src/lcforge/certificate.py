"""Canonical JSON encoding of certificates.

Layout rules: keys sorted, compact separators, ASCII only, trailing newline.
Polynomials are lists of ``[exponent_vector, coefficient]`` pairs in
descending grevlex order; QQ coefficients are ``"num/den"`` strings and
GF(p) coefficients decimal residue strings.  No floats anywhere.  A
``digest`` field holds the SHA-256 of the canonical encoding of everything
else, so any edit to a stored certificate is detectable.
"""

from __future__ import annotations

import hashlib
import json

from .errors import CertificateFormatError
from .fields import field_from_spec
from .groebner import Ideal
from .model import (
    POTENTIAL_LC_REQUIRES,
    SPECIAL_LC_REQUIRES,
    BuildConfig,
    CitedStep,
    CompleteIntersectionWitness,
    DiscrepancyRecord,
    GenericCombination,
    HypothesisSet,
    LcCertificate,
    MixingMatrix,
    SpecialLcCertificate,
    SubsetReport,
    WitnessStep,
)
from .predicates import PredicateVerdict
from .rings import Polynomial, RingContext

VERSION = "lcforge-certificate/1"


# ---------------------------------------------------------------------------
# encoding
# ---------------------------------------------------------------------------


def encode_poly(p: Polynomial) -> list:
    f = p.ring.field
    return [[list(e), f.to_str(c)] for e, c in p.sorted_terms()]


def encode_polys(ps) -> list:
    return [encode_poly(p) for p in ps]


def encode_verdict(v: PredicateVerdict) -> dict:
    ev = {}
    for k, val in v.evidence.items():
        ev[k] = encode_polys(val) if k.endswith("_basis") else val
    return {"name": v.name, "verdict": v.verdict, "citation": v.citation, "evidence": ev}


def encode_ring(ring: RingContext) -> dict:
    return {"field": ring.field.name, "variables": list(ring.names)}


def encode_discrepancy(d: DiscrepancyRecord) -> dict:
    return {
        "r": d.r,
        "components": list(d.components),
        "canonical_coefficient": d.canonical_coefficient,
        "pullback_multiplicity": [list(row) for row in d.pullback_multiplicity],
        "boundary_coefficients": list(d.boundary_coefficients),
        "discrepancies": list(d.discrepancies),
    }


def encode_hypotheses(h: HypothesisSet, required) -> dict:
    return {
        "declared": dict(sorted(h.declared.items())),
        "required": list(required),
        "missing": h.missing(required),
    }


def encode_cited(steps) -> list:
    return [
        {"step": s.step, "statement": s.statement, "consumes": list(s.consumes), "references": list(s.references)}
        for s in steps
    ]


def encode_boundary(gens) -> list:
    return [{"divisor": encode_poly(g), "coefficient": "1/1"} for g in gens]


def to_dict(cert) -> dict:
    """The certificate as a JSON-ready dict, without the digest."""
    f = cert.ring.field
    common = {
        "version": VERSION,
        "kind": cert.kind,
        "builder": cert.builder,
        "ring": encode_ring(cert.ring),
        "ambient_ideal": encode_polys(cert.ambient.canonical()),
        "center_ideal": encode_polys(cert.center.canonical()),
        "discrepancy": encode_discrepancy(cert.discrepancy),
        "cited_steps": encode_cited(cert.cited_steps),
        "conclusion": cert.conclusion,
        "seed": cert.seed,
        "config": cert.config.to_dict(),
        "boundary": encode_boundary([g for g, _ in cert.boundary]),
    }
    sing = {"mode": cert.sing_mode, "ideal": encode_polys(cert.sing_ambient.canonical())}
    if isinstance(cert, LcCertificate):
        w = cert.witness
        common["hypotheses"] = encode_hypotheses(cert.hypotheses, POTENTIAL_LC_REQUIRES)
        common["witness"] = {
            "sing_ambient": sing,
            "center_checks": [encode_verdict(v) for v in cert.center_checks],
            "degree": w.degree,
            "basis_id": w.steps[0].combination.basis_id if w.steps else "",
            "basis": encode_polys(w.basis),
            "steps": [
                {
                    "lambda": [f.to_str(c) for c in s.combination.lambdas],
                    "g": encode_poly(s.combination.g),
                    "retries": s.combination.retries,
                    "dimension": s.dimension,
                    "verdicts": [encode_verdict(v) for v in s.verdicts],
                }
                for s in w.steps
            ],
            "dimension_chain": list(w.dimension_chain),
            "component": encode_verdict(w.component),
            "residual_ideal": encode_polys(w.residual) if w.residual is not None else None,
            "snc": encode_verdict(cert.snc),
            "snc_attempts": cert.snc_attempts,
        }
    else:
        m = cert.matrix
        common["hypotheses"] = encode_hypotheses(cert.hypotheses, SPECIAL_LC_REQUIRES)
        common["witness"] = {
            "sing_ambient": sing,
            "generators": encode_polys(cert.generators),
            "input_checks": [encode_verdict(v) for v in cert.input_checks],
            "mixing_matrix": {
                "entries": [[f.to_str(c) for c in row] for row in m.entries],
                "seed": m.seed,
                "determinant": f.to_str(m.determinant),
            },
            "mixed_generators": encode_polys(cert.mixed),
            "mixed_checks": [encode_verdict(v) for v in cert.mixed_checks],
            "subset_reports": [
                {
                    "subset": list(rep.subset),
                    "ideal": encode_polys(rep.ideal_basis),
                    "reduced": encode_verdict(rep.reduced),
                    "normal": encode_verdict(rep.normal),
                    "smooth_away": encode_verdict(rep.smooth_away),
                }
                for rep in cert.reports
            ],
            "attempts": cert.attempts,
        }
    return common


def canonical_bytes(obj) -> bytes:
    return (json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=True) + "\n").encode("ascii")


def digest_of(obj: dict) -> str:
    body = {k: v for k, v in obj.items() if k != "digest"}
    return "sha256:" + hashlib.sha256(canonical_bytes(body)).hexdigest()


def serialize(cert) -> bytes:
    obj = to_dict(cert)
    obj["digest"] = digest_of(obj)
    return canonical_bytes(obj)


# ---------------------------------------------------------------------------
# decoding
# ---------------------------------------------------------------------------


class _Reader:
    """Typed accessors that report the JSON path of anything malformed."""

    def __init__(self, ring: RingContext | None = None):
        self.ring = ring

    def get(self, obj, key, path, kind=None):
        if not isinstance(obj, dict):
            raise CertificateFormatError("expected an object", path)
        if key not in obj:
            raise CertificateFormatError(f"missing field {key!r}", path)
        val = obj[key]
        if kind is not None and not _is(val, kind):
            raise CertificateFormatError(f"expected {kind}", f"{path}.{key}")
        return val

    def field_elem(self, s, path):
        if not isinstance(s, str):
            raise CertificateFormatError("field element must be a string", path)
        try:
            return self.ring.field.from_str(s)
        except ValueError as exc:
            raise CertificateFormatError(str(exc), path) from None

    def poly(self, data, path) -> Polynomial:
        ring = self.ring
        if not isinstance(data, list):
            raise CertificateFormatError("polynomial must be a term list", path)
        terms = {}
        for k, term in enumerate(data):
            tp = f"{path}[{k}]"
            if not (isinstance(term, list) and len(term) == 2 and isinstance(term[0], list)):
                raise CertificateFormatError("term must be [exponents, coefficient]", tp)
            exps = term[0]
            if len(exps) != ring.nvars or not all(_is(x, "int") and x >= 0 for x in exps):
                raise CertificateFormatError(f"exponent vector must hold {ring.nvars} naturals", tp)
            c = self.field_elem(term[1], f"{tp}[1]")
            if c == 0:
                raise CertificateFormatError("zero coefficient stored", tp)
            if tuple(exps) in terms:
                raise CertificateFormatError("repeated monomial", tp)
            terms[tuple(exps)] = c
        p = Polynomial(ring, terms, _clean=True)
        if encode_poly(p) != data:
            raise CertificateFormatError("terms not in canonical (descending grevlex) order", path)
        return p

    def polys(self, data, path) -> list:
        if not isinstance(data, list):
            raise CertificateFormatError("expected a list of polynomials", path)
        return [self.poly(p, f"{path}[{k}]") for k, p in enumerate(data)]

    def ideal(self, data, path) -> Ideal:
        return Ideal(self.polys(data, path), self.ring)

    def verdict(self, data, path) -> PredicateVerdict:
        name = self.get(data, "name", path, "str")
        verdict = self.get(data, "verdict", path, "str")
        if verdict not in ("pass", "fail"):
            raise CertificateFormatError("verdict must be 'pass' or 'fail'", f"{path}.verdict")
        citation = self.get(data, "citation", path, "str")
        ev_raw = self.get(data, "evidence", path, "dict")
        ev = {}
        for k, v in ev_raw.items():
            ev[k] = self.polys(v, f"{path}.evidence.{k}") if k.endswith("_basis") else v
        return PredicateVerdict(name, verdict == "pass", ev, citation)

    def verdicts(self, data, path) -> tuple:
        if not isinstance(data, list):
            raise CertificateFormatError("expected a list of verdicts", path)
        return tuple(self.verdict(v, f"{path}[{k}]") for k, v in enumerate(data))


def _is(val, kind) -> bool:
    if kind == "int":
        return isinstance(val, int) and not isinstance(val, bool)
    return isinstance(val, {"str": str, "dict": dict, "list": list}[kind])


def _ints(val, path, depth=1):
    ok = isinstance(val, list) and all(
        (_is(x, "int") if depth == 1 else _ints(x, path, depth - 1) is not None) for x in val
    )
    if not ok:
        raise CertificateFormatError("expected a list of integers", path)
    return val


def parse_json(data) -> dict:
    if isinstance(data, (bytes, bytearray)):
        try:
            data = data.decode("ascii")
        except UnicodeDecodeError as exc:
            raise CertificateFormatError(f"non-ASCII byte at offset {exc.start}") from None
    try:
        obj = json.loads(data)
    except json.JSONDecodeError as exc:
        raise CertificateFormatError(exc.msg, f"line {exc.lineno}, column {exc.colno}") from None
    if not isinstance(obj, dict):
        raise CertificateFormatError("top level must be an object", "$")
    version = obj.get("version")
    if version != VERSION:
        raise CertificateFormatError(f"unsupported certificate version {version!r} (expected {VERSION!r})", "$.version")
    return obj


def from_dict(obj: dict):
    rd = _Reader()
    ring_d = rd.get(obj, "ring", "$", "dict")
    try:
        field = field_from_spec(rd.get(ring_d, "field", "$.ring", "str"))
        names = rd.get(ring_d, "variables", "$.ring", "list")
        if not all(isinstance(n, str) for n in names):
            raise ValueError("variable names must be strings")
        ring = RingContext(names, field)
    except ValueError as exc:
        raise CertificateFormatError(str(exc), "$.ring") from None
    rd.ring = ring
    kind = rd.get(obj, "kind", "$", "str")
    builder = rd.get(obj, "builder", "$", "str")
    X = rd.ideal(rd.get(obj, "ambient_ideal", "$"), "$.ambient_ideal")
    Z = rd.ideal(rd.get(obj, "center_ideal", "$"), "$.center_ideal")
    seed = rd.get(obj, "seed", "$", "int")
    cfg_d = rd.get(obj, "config", "$", "dict")
    try:
        if "workers" in cfg_d or not all(_is(v, "int") for v in cfg_d.values()):
            raise TypeError("config holds integer build parameters only")
        config = BuildConfig(**cfg_d)
        if config.to_dict() != cfg_d:
            raise TypeError("config is missing build parameters")
    except TypeError as exc:
        raise CertificateFormatError(str(exc), "$.config") from None
    hyp_d = rd.get(obj, "hypotheses", "$", "dict")
    declared = rd.get(hyp_d, "declared", "$.hypotheses", "dict")
    try:
        hypotheses = HypothesisSet(dict(declared))
    except ValueError as exc:
        raise CertificateFormatError(str(exc), "$.hypotheses.declared") from None
    cited = []
    for k, s in enumerate(rd.get(obj, "cited_steps", "$", "list")):
        p = f"$.cited_steps[{k}]"
        cited.append(
            CitedStep(
                rd.get(s, "step", p, "str"),
                rd.get(s, "statement", p, "str"),
                tuple(rd.get(s, "consumes", p, "list")),
                tuple(rd.get(s, "references", p, "list")),
            )
        )
    conclusion = rd.get(obj, "conclusion", "$")
    if conclusion is not None and not isinstance(conclusion, dict):
        raise CertificateFormatError("conclusion must be an object or null", "$.conclusion")
    dd = rd.get(obj, "discrepancy", "$", "dict")
    disc = DiscrepancyRecord(
        rd.get(dd, "r", "$.discrepancy", "int"),
        tuple(rd.get(dd, "components", "$.discrepancy", "list")),
        rd.get(dd, "canonical_coefficient", "$.discrepancy", "int"),
        tuple(tuple(row) for row in _ints(rd.get(dd, "pullback_multiplicity", "$.discrepancy"), "$.discrepancy.pullback_multiplicity", 2)),
        tuple(_ints(rd.get(dd, "boundary_coefficients", "$.discrepancy"), "$.discrepancy.boundary_coefficients")),
        tuple(_ints(rd.get(dd, "discrepancies", "$.discrepancy"), "$.discrepancy.discrepancies")),
    )
    boundary = rd.get(obj, "boundary", "$", "list")
    bgens = []
    for k, b in enumerate(boundary):
        p = f"$.boundary[{k}]"
        bgens.append(rd.poly(rd.get(b, "divisor", p), f"{p}.divisor"))
        if rd.get(b, "coefficient", p, "str") != "1/1":
            raise CertificateFormatError("boundary coefficients must be 1/1", f"{p}.coefficient")
    wd = rd.get(obj, "witness", "$", "dict")
    sd = rd.get(wd, "sing_ambient", "$.witness", "dict")
    sing_mode = rd.get(sd, "mode", "$.witness.sing_ambient", "str")
    sing = rd.ideal(rd.get(sd, "ideal", "$.witness.sing_ambient"), "$.witness.sing_ambient.ideal")

    if kind == "potential-lc":
        steps = []
        for k, s in enumerate(rd.get(wd, "steps", "$.witness", "list")):
            p = f"$.witness.steps[{k}]"
            lambdas = tuple(rd.field_elem(c, f"{p}.lambda[{j}]") for j, c in enumerate(rd.get(s, "lambda", p, "list")))
            g = rd.poly(rd.get(s, "g", p), f"{p}.g")
            comb = GenericCombination(lambdas, rd.get(wd, "basis_id", "$.witness", "str"), g, rd.get(s, "retries", p, "int"))
            steps.append(WitnessStep(comb, rd.verdicts(rd.get(s, "verdicts", p), f"{p}.verdicts"), rd.get(s, "dimension", p, "int")))
        if [s.combination.g for s in steps] != bgens:
            raise CertificateFormatError("boundary divisors differ from the witness generators", "$.boundary")
        residual = rd.get(wd, "residual_ideal", "$.witness")
        witness = CompleteIntersectionWitness(
            X,
            Z,
            rd.get(wd, "degree", "$.witness", "int"),
            tuple(rd.polys(rd.get(wd, "basis", "$.witness"), "$.witness.basis")),
            tuple(steps),
            tuple(_ints(rd.get(wd, "dimension_chain", "$.witness"), "$.witness.dimension_chain")),
            rd.verdict(rd.get(wd, "component", "$.witness"), "$.witness.component"),
            tuple(rd.polys(residual, "$.witness.residual_ideal")) if residual is not None else None,
        )
        return LcCertificate(
            ring=ring,
            ambient=X,
            center=Z,
            sing_ambient=sing,
            sing_mode=sing_mode,
            witness=witness,
            center_checks=rd.verdicts(rd.get(wd, "center_checks", "$.witness"), "$.witness.center_checks"),
            snc=rd.verdict(rd.get(wd, "snc", "$.witness"), "$.witness.snc"),
            snc_attempts=rd.get(wd, "snc_attempts", "$.witness", "int"),
            discrepancy=disc,
            hypotheses=hypotheses,
            cited_steps=tuple(cited),
            conclusion=conclusion,
            seed=seed,
            config=config,
            builder=builder,
        )
    if kind == "special-lc":
        md = rd.get(wd, "mixing_matrix", "$.witness", "dict")
        entries = tuple(
            tuple(rd.field_elem(c, f"$.witness.mixing_matrix.entries[{i}][{j}]") for j, c in enumerate(row))
            for i, row in enumerate(rd.get(md, "entries", "$.witness.mixing_matrix", "list"))
        )
        matrix = MixingMatrix(
            entries,
            rd.get(md, "seed", "$.witness.mixing_matrix", "int"),
            rd.field_elem(rd.get(md, "determinant", "$.witness.mixing_matrix"), "$.witness.mixing_matrix.determinant"),
        )
        mixed = tuple(rd.polys(rd.get(wd, "mixed_generators", "$.witness"), "$.witness.mixed_generators"))
        if list(mixed) != bgens:
            raise CertificateFormatError("boundary divisors differ from the mixed generators", "$.boundary")
        reports = []
        for k, rep in enumerate(rd.get(wd, "subset_reports", "$.witness", "list")):
            p = f"$.witness.subset_reports[{k}]"
            reports.append(
                SubsetReport(
                    tuple(_ints(rd.get(rep, "subset", p), f"{p}.subset")),
                    tuple(rd.polys(rd.get(rep, "ideal", p), f"{p}.ideal")),
                    rd.verdict(rd.get(rep, "reduced", p), f"{p}.reduced"),
                    rd.verdict(rd.get(rep, "normal", p), f"{p}.normal"),
                    rd.verdict(rd.get(rep, "smooth_away", p), f"{p}.smooth_away"),
                )
            )
        return SpecialLcCertificate(
            ring=ring,
            ambient=X,
            center=Z,
            generators=tuple(rd.polys(rd.get(wd, "generators", "$.witness"), "$.witness.generators")),
            sing_ambient=sing,
            sing_mode=sing_mode,
            input_checks=rd.verdicts(rd.get(wd, "input_checks", "$.witness"), "$.witness.input_checks"),
            matrix=matrix,
            mixed=mixed,
            mixed_checks=rd.verdicts(rd.get(wd, "mixed_checks", "$.witness"), "$.witness.mixed_checks"),
            reports=tuple(reports),
            attempts=rd.get(wd, "attempts", "$.witness", "int"),
            discrepancy=disc,
            hypotheses=hypotheses,
            cited_steps=tuple(cited),
            conclusion=conclusion,
            seed=seed,
            config=config,
            builder=builder,
        )
    raise CertificateFormatError(f"unknown certificate kind {kind!r}", "$.kind")


def deserialize(data):
    """Parse certificate bytes (or text) into a certificate object."""
    return from_dict(parse_json(data))
