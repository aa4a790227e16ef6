"""Command-line driver.

    lcforge build --in point.lcp --seed 42 --out cert.json
    lcforge verify --cert cert.json --in point.lcp

Exit codes: 0 success, 1 verification failure, 2 usage or input error,
3 resource exhaustion.
"""

from __future__ import annotations

import argparse
import sys

from . import __version__
from .certificate import deserialize, serialize
from .errors import (
    CertificateFormatError,
    GenericityFailure,
    InputError,
    LcForgeError,
    ResourceExhausted,
    SpecialVerificationFailure,
)
from .groebner import DEFAULT_STEP_LIMIT
from .lc_builder import build_boundary
from .model import BuildConfig, LcCertificate
from .problem import REQUIRED, parse_problem
from .special import build_special_boundary
from .verify import reverify

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise _UsageError(f"{self.prog}: error: {message}")


class _UsageError(Exception):
    pass


def _seed(text: str) -> int:
    try:
        v = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError("seed must fit in 64 unsigned bits")
    return v


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _natural(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return v


def make_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="lcforge", description="Build and check certificates that a subvariety is a log canonical center.")
    p.add_argument("--version", action="version", version=f"lcforge {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    b = sub.add_parser("build", help="construct a boundary and write its certificate")
    b.add_argument("--in", dest="input", required=True, help="problem file")
    b.add_argument("--out", help="certificate path (required unless --verify-only)")
    b.add_argument("--mode", choices=["potential-lc", "special-lc"], help="overrides the problem file's mode")
    b.add_argument("--seed", type=_seed, default=0)
    b.add_argument("--sample-bound", type=_positive, default=20)
    b.add_argument("--max-retries", type=_natural, default=10)
    b.add_argument("--max-r", type=_positive, default=6)
    b.add_argument("--step-limit", type=_positive, default=DEFAULT_STEP_LIMIT)
    b.add_argument("--workers", type=_positive, default=1)
    b.add_argument("--field", help="coefficient field override, e.g. Q or GF(101)")
    b.add_argument("--verify-only", action="store_true", help="build and re-verify in memory, write nothing")

    v = sub.add_parser("verify", help="re-check a stored certificate")
    v.add_argument("--cert", required=True)
    v.add_argument("--in", dest="input", help="problem file the certificate must match")
    v.add_argument("--no-replay", action="store_true", help="skip the seeded rebuild")
    return p


def _read(path: str) -> str:
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def summarize(cert) -> list[str]:
    d = cert.discrepancy
    lines = [
        f"kind          {cert.kind}",
        f"ring          {cert.ring.field}[{', '.join(cert.ring.names)}]",
        f"r             {d.r}",
        f"degrees       {[g.total_degree() for g, _ in cert.boundary]}",
        "boundary      " + " + ".join(f"V({g})" for g, _ in cert.boundary),
        "discrepancy   " + ", ".join(f"{c}: {a}" for c, a in zip(d.components, d.discrepancies)),
        "verdicts",
    ]
    if isinstance(cert, LcCertificate):
        verdicts = list(cert.center_checks) + [v for s in cert.witness.steps for v in s.verdicts]
        verdicts += [cert.witness.component, cert.snc]
    else:
        verdicts = list(cert.input_checks) + list(cert.mixed_checks)
        verdicts += [v for rep in cert.reports for v in (rep.reduced, rep.normal, rep.smooth_away)]
    counts = {}
    for v in verdicts:
        key = (v.name, v.verdict)
        counts[key] = counts.get(key, 0) + 1
    for (name, verdict), n in sorted(counts.items()):
        lines.append(f"  {name:<36} {verdict}" + (f" x{n}" if n > 1 else ""))
    missing = cert.hypotheses.missing(REQUIRED[cert.kind])
    if cert.conclusion is None:
        lines.append("conclusion    withheld" + (f" (undeclared: {', '.join(missing)})" if missing else ""))
    else:
        lines.append(f"conclusion    {cert.conclusion['statement']}")
        lines.append(f"              conditional on {', '.join(cert.conclusion['conditional_on'])}")
    return lines


def _build(args) -> int:
    if not args.verify_only and not args.out:
        raise _UsageError("lcforge build: error: --out is required unless --verify-only is given")
    try:
        text = _read(args.input)
    except (OSError, UnicodeDecodeError) as exc:
        raise _UsageError(f"cannot read {args.input}: {exc}") from None
    spec = parse_problem(text, args.field, require_hypotheses=False)
    mode = args.mode or (spec.mode if spec.mode != "verify" else "potential-lc")
    missing = spec.declared.missing(REQUIRED[mode])
    if missing:
        raise InputError(f"mode {mode} requires declared hypotheses: {', '.join(missing)}")
    config = BuildConfig(
        sample_bound=args.sample_bound,
        max_retries=args.max_retries,
        max_r=args.max_r,
        step_limit=args.step_limit,
        workers=args.workers,
    )
    X = spec.ambient_ideal()
    if mode == "potential-lc":
        cert = build_boundary(X, spec.center_ideal(), spec.declared, args.seed, config, spec.sing_ambient_ideal())
    else:
        cert = build_special_boundary(X, spec.center, spec.declared, args.seed, config, spec.sing_ambient_ideal())
    data = serialize(cert)
    for line in summarize(cert):
        print(line)
    if args.verify_only:
        verdict = reverify(data, spec if args.mode is None else None)
        print(f"reverify      {verdict.verdict}")
        if not verdict.passed:
            print(f"lcforge: {verdict.evidence['message']}", file=sys.stderr)
            return EXIT_FAIL
        return EXIT_OK
    try:
        with open(args.out, "wb") as fh:
            fh.write(data)
    except OSError as exc:
        raise _UsageError(f"cannot write {args.out}: {exc}") from None
    print(f"certificate   {args.out}")
    return EXIT_OK


def _verify(args) -> int:
    try:
        data = open(args.cert, "rb").read()
    except OSError as exc:
        raise _UsageError(f"cannot read {args.cert}: {exc}") from None
    spec = None
    if args.input:
        try:
            text = _read(args.input)
        except (OSError, UnicodeDecodeError) as exc:
            raise _UsageError(f"cannot read {args.input}: {exc}") from None
        spec = parse_problem(text, require_hypotheses=False)
    verdict = reverify(data, spec, replay=not args.no_replay)
    if verdict.passed:
        for line in summarize(deserialize(data)):
            print(line)
        print(f"reverify      pass ({verdict.evidence['stage']})")
        return EXIT_OK
    ev = verdict.evidence
    print(f"reverify      fail at stage {ev['stage']}: {ev['message']}")
    for path in ev["mismatches"]:
        print(f"  mismatch    {path}")
    return EXIT_FAIL


def run(argv=None) -> int:
    parser = make_parser()
    try:
        try:
            args = parser.parse_args(argv)
        except SystemExit as exc:  # --help / --version
            return int(exc.code or 0)
        return _build(args) if args.command == "build" else _verify(args)
    except _UsageError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_USAGE
    except ResourceExhausted as exc:
        print(f"lcforge: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (GenericityFailure, SpecialVerificationFailure, CertificateFormatError) as exc:
        stage = f" [stage {exc.stage}]" if exc.stage else ""
        print(f"lcforge: {exc}{stage}", file=sys.stderr)
        return EXIT_FAIL
    except InputError as exc:
        stage = f" [stage {exc.stage}]" if exc.stage else ""
        print(f"lcforge: {exc}{stage}", file=sys.stderr)
        return EXIT_USAGE
    except LcForgeError as exc:
        print(f"lcforge: {exc}", file=sys.stderr)
        return EXIT_FAIL


def main() -> None:
    sys.exit(run())
