"""Problem files: a small line-oriented format for hand-written fixtures.

    # twisted cubic in P^3
    field Q
    ring x y z w
    ambient:
    center: x*z - y^2; y*w - z^2
            x*w - y*z
    declare: X-normal, X-Q-Gorenstein, X-CM, Z-prime, not-in-SingX
    mode potential-lc

``field`` and ``ring`` take their value on the same line.  The list
sections (``ambient:``, ``center:``, ``sing_ambient:``, ``declare:``) run
until the next keyword and separate items by ``;`` (generators), ``,``
(declarations) or newlines.  ``#`` starts a comment.  ``mode`` is optional
and defaults to ``potential-lc``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import ParseError
from .expr import parse_polynomial
from .fields import Field, field_from_spec
from .groebner import Ideal, saturate_irrelevant
from .model import HYPOTHESIS_NAMES, POTENTIAL_LC_REQUIRES, SPECIAL_LC_REQUIRES, HypothesisSet
from .rings import RingContext

MODES = ("potential-lc", "special-lc", "verify")
REQUIRED = {"potential-lc": POTENTIAL_LC_REQUIRES, "special-lc": SPECIAL_LC_REQUIRES, "verify": ()}

_SCALARS = ("field", "ring", "mode")
_LISTS = ("ambient", "center", "sing_ambient", "declare")
_HEAD = re.compile(r"^(field|ring|mode)\b\s*:?|^(ambient|center|sing_ambient|declare)\s*:")
_NAME = re.compile(r"[A-Za-z_][A-Za-z_0-9]*$")


@dataclass(frozen=True)
class ProblemSpec:
    ring: RingContext
    ambient: tuple  # generators as written
    center: tuple
    declared: HypothesisSet
    mode: str = "potential-lc"
    sing_ambient: tuple | None = None
    lines: dict = field(default_factory=dict, compare=False)  # section -> first line

    @property
    def field(self) -> Field:
        return self.ring.field

    def ambient_ideal(self) -> Ideal:
        """I_X, saturated with respect to the irrelevant ideal."""
        return _saturated(self.ambient, self.ring)

    def center_ideal(self) -> Ideal:
        return _saturated(self.center, self.ring)

    def sing_ambient_ideal(self) -> Ideal | None:
        if self.sing_ambient is None:
            return None
        return Ideal(list(self.sing_ambient), self.ring)

    def missing_hypotheses(self) -> list[str]:
        return self.declared.missing(REQUIRED[self.mode])


def _saturated(gens, ring) -> Ideal:
    I = Ideal(list(gens), ring)
    if I.is_zero():
        return I
    return saturate_irrelevant(I)


def _strip_comment(line: str) -> str:
    k = line.find("#")
    return line if k < 0 else line[:k]


def _split_items(text: str, start_col: int, seps: str):
    """Yield (item, column) for the pieces of ``text`` between separators."""
    col = start_col
    for piece in re.split(f"([{re.escape(seps)}])", text):
        if piece and piece in seps:
            col += len(piece)
            continue
        stripped = piece.strip()
        if stripped:
            yield stripped, col + len(piece) - len(piece.lstrip())
        col += len(piece)


def _describe_terms(p, degrees) -> str:
    parts = []
    for d in sorted(degrees, reverse=True):
        terms = {e: c for e, c in p.terms.items() if sum(e) == d}
        parts.append(f"degree {d}: {type(p)(p.ring, terms)}")
    return "; ".join(parts)


def _check_homogeneous(p, line, col, what):
    if p.is_zero():
        raise ParseError(f"{what} generator is zero", line, col)
    if not p.is_homogeneous():
        degs = {sum(e) for e in p.terms}
        top = max(degs)
        raise ParseError(
            f"{what} generator {p} is not homogeneous; offending terms ({_describe_terms(p, degs - {top})})"
            f" against degree {top}",
            line,
            col,
        )


def parse_problem(text: str, field_override: str | None = None, require_hypotheses: bool = True) -> ProblemSpec:
    """Parse a problem file.  Every error carries a line and column."""
    scalars = {}
    lists = {k: [] for k in _LISTS}
    seen_line = {}
    current = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw)
        if not line.strip():
            continue
        body = line.lstrip()
        indent = len(line) - len(body)
        m = _HEAD.match(body)
        if m:
            key = m.group(1) or m.group(2)
            if key in seen_line:
                raise ParseError(f"section {key!r} repeated (first on line {seen_line[key]})", lineno, indent + 1)
            seen_line[key] = lineno
            rest_col = indent + m.end() + 1
            rest = body[m.end():]
            if key in _SCALARS:
                value = rest.strip()
                if not value:
                    raise ParseError(f"{key!r} needs a value", lineno, rest_col)
                scalars[key] = (value, lineno, rest_col + len(rest) - len(rest.lstrip()))
                current = None
            else:
                current = key
                lists[key].append((rest, lineno, rest_col))
            continue
        if current is None:
            word = body.split()[0]
            raise ParseError(f"unexpected {word!r}; expected a section keyword", lineno, indent + 1)
        lists[current].append((line, lineno, 1))

    for key in ("field", "ring"):
        if key not in scalars:
            raise ParseError(f"missing {key!r} line", None, None)

    fvalue, fline, fcol = scalars["field"]
    try:
        fld = field_from_spec(field_override if field_override is not None else fvalue)
    except ValueError as exc:
        if field_override is not None:
            raise ParseError(f"--field: {exc}") from None
        raise ParseError(str(exc), fline, fcol) from None

    rvalue, rline, rcol = scalars["ring"]
    names = []
    for name, col in _split_items(rvalue, rcol, ", "):
        if not _NAME.match(name):
            raise ParseError(f"invalid variable name {name!r}", rline, col)
        if name in names:
            raise ParseError(f"duplicate variable {name!r}", rline, col)
        names.append(name)
    ring = RingContext(names, fld)

    mode = "potential-lc"
    if "mode" in scalars:
        mode, mline, mcol = scalars["mode"]
        if mode not in MODES:
            raise ParseError(f"unknown mode {mode!r}; expected one of {', '.join(MODES)}", mline, mcol)

    def polys(key):
        out = []
        for chunk, line, col in lists[key]:
            for item, icol in _split_items(chunk, col, ";"):
                p = parse_polynomial(item, ring, line, icol)
                _check_homogeneous(p, line, icol, key)
                out.append(p)
        return tuple(out)

    if "center" not in seen_line:
        raise ParseError("missing 'center:' section", None, None)
    ambient = polys("ambient")
    center = polys("center")
    if not center:
        raise ParseError("center has no generators", seen_line["center"], 1)
    sing = polys("sing_ambient") if "sing_ambient" in seen_line else None

    declared = {}
    for chunk, line, col in lists["declare"]:
        for item, icol in _split_items(chunk, col, ","):
            if item not in HYPOTHESIS_NAMES:
                raise ParseError(f"unknown hypothesis {item!r}; known: {', '.join(HYPOTHESIS_NAMES)}", line, icol)
            declared[item] = f"problem file line {line}"
    spec = ProblemSpec(ring, ambient, center, HypothesisSet(declared), mode, sing, dict(seen_line))
    missing = spec.missing_hypotheses()
    if require_hypotheses and missing:
        raise ParseError(
            f"mode {mode} requires declared hypotheses: {', '.join(missing)}",
            seen_line.get("declare", seen_line.get("mode")),
            1 if ("declare" in seen_line or "mode" in seen_line) else None,
        )
    return spec


def read_problem(path, field_override: str | None = None, require_hypotheses: bool = True) -> ProblemSpec:
    with open(path, encoding="utf-8") as fh:
        return parse_problem(fh.read(), field_override, require_hypotheses)
