"""Polynomial rings, monomial orders and sparse polynomials."""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

from .errors import RingMismatchError
from .fields import QQ, Field

Monomial = tuple  # exponent vector, one entry per ring variable


def grevlex_key(e: Monomial):
    return (sum(e), tuple(-x for x in reversed(e)))


def lex_key(e: Monomial):
    return e


@dataclass(frozen=True)
class MonomialOrder:
    """Total order on exponent vectors, compatible with multiplication.

    ``kind`` is ``"grevlex"``, ``"lex"`` or ``"elim"``.  The elimination
    order compares the first ``split`` variables by grevlex and breaks ties
    with grevlex on the remaining ones, so any monomial touching the first
    block beats every monomial that does not.
    """

    kind: str = "grevlex"
    split: int = 0

    def __post_init__(self):
        if self.kind not in ("grevlex", "lex", "elim"):
            raise ValueError(f"unknown monomial order {self.kind!r}")
        if self.kind == "elim" and self.split < 1:
            raise ValueError("elimination order needs split >= 1")

    @property
    def key(self):
        if self.kind == "grevlex":
            return grevlex_key
        if self.kind == "lex":
            return lex_key
        k = self.split
        return lambda e: (grevlex_key(e[:k]), grevlex_key(e[k:]))

    @classmethod
    def elimination(cls, split: int) -> "MonomialOrder":
        return cls("elim", split)

    def tag(self) -> str:
        return self.kind if self.kind != "elim" else f"elim:{self.split}"

    @classmethod
    def from_tag(cls, tag: str) -> "MonomialOrder":
        if tag.startswith("elim:"):
            return cls.elimination(int(tag[5:]))
        return cls(tag)


GREVLEX = MonomialOrder("grevlex")
LEX = MonomialOrder("lex")


class RingContext:
    """Graded polynomial ring k[x_1..x_n], every variable of weight one."""

    def __init__(self, names, field: Field = QQ):
        names = tuple(names)
        if not names:
            raise ValueError("a ring needs at least one variable")
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        self.names = names
        self.field = field
        self.nvars = len(names)

    def __eq__(self, other):
        return (
            isinstance(other, RingContext)
            and self.names == other.names
            and self.field == other.field
        )

    def __hash__(self):
        return hash((self.names, self.field))

    def __repr__(self):
        return f"RingContext({' '.join(self.names)} over {self.field})"

    def __call__(self, text: str) -> "Polynomial":
        from .expr import parse_polynomial

        return parse_polynomial(text, self)

    @property
    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    @property
    def one(self) -> "Polynomial":
        return self.constant(1)

    def constant(self, c) -> "Polynomial":
        return Polynomial(self, {(0,) * self.nvars: c})

    def monomial(self, exps, coeff=1) -> "Polynomial":
        return Polynomial(self, {tuple(exps): coeff})

    def gen(self, i: int) -> "Polynomial":
        e = [0] * self.nvars
        e[i] = 1
        return Polynomial(self, {tuple(e): 1})

    def gens(self) -> list["Polynomial"]:
        return [self.gen(i) for i in range(self.nvars)]

    def var(self, name: str) -> "Polynomial":
        return self.gen(self.names.index(name))

    def index(self, name: str) -> int:
        return self.names.index(name)

    def with_prefix(self, extra) -> "RingContext":
        """Ring with fresh variables prepended (used for elimination tricks)."""
        extra = tuple(extra)
        names = list(extra)
        for n in self.names:
            while n in names:
                n = n + "_"
            names.append(n)
        return RingContext(names, self.field)

    def with_field(self, field: Field) -> "RingContext":
        return RingContext(self.names, field)


def monomials_of_degree(n: int, d: int):
    """All exponent vectors of total degree d in n variables, grevlex-descending."""
    out = []

    def rec(prefix, remaining, slots):
        if slots == 1:
            out.append(tuple(prefix + [remaining]))
            return
        for k in range(remaining, -1, -1):
            rec(prefix + [k], remaining - k, slots - 1)

    if d < 0:
        return []
    rec([], d, n)
    out.sort(key=grevlex_key, reverse=True)
    return out


class Polynomial:
    """Immutable sparse polynomial: a map exponent-vector -> nonzero coefficient."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: RingContext, terms=None, _clean: bool = False):
        self.ring = ring
        if _clean:
            self.terms = terms
        else:
            f = ring.field
            clean = {}
            for e, c in (terms or {}).items():
                e = tuple(int(x) for x in e)
                if len(e) != ring.nvars:
                    raise ValueError(f"exponent vector {e} has wrong length for {ring}")
                if any(x < 0 for x in e):
                    raise ValueError(f"negative exponent in {e}")
                c = f(c)
                if c != 0:
                    clean[e] = c
            self.terms = clean
        self._hash = None

    # -- basic structure -------------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, int) and other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def _check(self, other: "Polynomial"):
        if self.ring != other.ring:
            raise RingMismatchError(f"ring mismatch: {self.ring} vs {other.ring}")

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        return self.ring.constant(other)

    # -- arithmetic ------------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        f = self.ring.field
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = f.add(out.get(e, f.zero), c)
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return Polynomial(self.ring, out, _clean=True)

    __radd__ = __add__

    def __neg__(self):
        f = self.ring.field
        return Polynomial(self.ring, {e: f.neg(c) for e, c in self.terms.items()}, _clean=True)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return self.scale(other)
        self._check(other)
        f = self.ring.field
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = f.add(out.get(e, f.zero), f.mul(c1, c2))
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return Polynomial(self.ring, out, _clean=True)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c) -> "Polynomial":
        f = self.ring.field
        c = f(c)
        if c == 0:
            return self.ring.zero
        return Polynomial(self.ring, {e: f.mul(a, c) for e, a in self.terms.items()}, _clean=True)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        return reduce(lambda a, b: a * b, [self] * k, self.ring.one)

    def shift(self, exps) -> "Polynomial":
        """Multiply by the monomial with exponent vector ``exps``."""
        return Polynomial(
            self.ring,
            {tuple(a + b for a, b in zip(e, exps)): c for e, c in self.terms.items()},
            _clean=True,
        )

    def derivative(self, i: int) -> "Polynomial":
        f = self.ring.field
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                ne = e[:i] + (e[i] - 1,) + e[i + 1 :]
                v = f.mul(c, f(e[i]))
                if v:
                    out[ne] = v
        return Polynomial(self.ring, out, _clean=True)

    # -- degrees ---------------------------------------------------------
    def total_degree(self) -> int:
        """Maximum total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def homogeneous_degree(self):
        """The common degree of all terms, or None if mixed or zero."""
        degs = {sum(e) for e in self.terms}
        return degs.pop() if len(degs) == 1 else None

    def is_homogeneous(self) -> bool:
        return not self.terms or self.homogeneous_degree() is not None

    def variables_used(self) -> set[int]:
        return {i for e in self.terms for i, x in enumerate(e) if x}

    # -- ordering --------------------------------------------------------
    def sorted_terms(self, order: MonomialOrder = GREVLEX):
        key = order.key
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)

    def leading_monomial(self, order: MonomialOrder = GREVLEX) -> Monomial:
        return max(self.terms, key=order.key)

    def leading_coefficient(self, order: MonomialOrder = GREVLEX):
        return self.terms[self.leading_monomial(order)]

    def monic(self, order: MonomialOrder = GREVLEX) -> "Polynomial":
        if not self.terms:
            return self
        return self.scale(self.ring.field.inv(self.leading_coefficient(order)))

    # -- evaluation / substitution --------------------------------------
    def evaluate(self, point):
        f = self.ring.field
        total = f.zero
        for e, c in self.terms.items():
            v = c
            for x, k in zip(point, e):
                if k:
                    v = f.mul(v, f(x) ** k if f.characteristic == 0 else pow(f(x), k, f.p))
            total = f.add(total, v)
        return total

    def substitute(self, images: list["Polynomial"]) -> "Polynomial":
        """Compose with the ring map x_i -> images[i] (images share one ring)."""
        target = images[0].ring
        out = target.zero
        for e, c in self.terms.items():
            term = target.constant(c)
            for img, k in zip(images, e):
                if k:
                    term = term * img**k
            out = out + term
        return out

    def map_ring(self, ring: RingContext, positions) -> "Polynomial":
        """Re-embed into ``ring`` sending variable i to variable positions[i]."""
        out = {}
        for e, c in self.terms.items():
            ne = [0] * ring.nvars
            for i, k in enumerate(e):
                if k:
                    ne[positions[i]] = k
            out[tuple(ne)] = c
        return Polynomial(ring, out, _clean=ring.field == self.ring.field)

    def change_field(self, field: Field) -> "Polynomial":
        return Polynomial(self.ring.with_field(field), dict(self.terms))

    # -- display ---------------------------------------------------------
    def __str__(self):
        if not self.terms:
            return "0"
        names = self.ring.names
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k
            )
            cs = str(c)
            neg = cs.startswith("-")
            if neg:
                cs = cs[1:]
            if mono:
                body = mono if cs == "1" else f"{cs}*{mono}"
            else:
                body = cs
            if "/" in cs and mono:
                body = f"({cs})*{mono}"
            parts.append(("- " if neg else "+ ") + body)
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]

    def __repr__(self):
        return f"Polynomial({self})"
