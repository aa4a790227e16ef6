"""Exact coefficient fields: the rationals and prime fields.

Field elements are plain Python numbers: ``fractions.Fraction`` over Q and
``int`` residues in ``[0, p)`` over GF(p).  A field object owns the
arithmetic so polynomial code never has to branch on the variant.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import isqrt


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for d in range(3, isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


class Field:
    characteristic: int
    name: str

    def __eq__(self, other):
        return isinstance(other, Field) and self.name == other.name

    def __hash__(self):
        return hash(self.name)

    def __repr__(self):
        return self.name


class RationalField(Field):
    characteristic = 0
    name = "QQ"

    zero = Fraction(0)
    one = Fraction(1)

    def __call__(self, value) -> Fraction:
        if isinstance(value, str):
            return Fraction(value)
        return Fraction(value)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero in QQ")
        return 1 / Fraction(a)

    def div(self, a, b):
        return Fraction(a) / b

    def to_str(self, a) -> str:
        a = Fraction(a)
        return f"{a.numerator}/{a.denominator}"

    def from_str(self, s: str) -> Fraction:
        if not re.fullmatch(r"-?\d+/[1-9]\d*", s):
            raise ValueError(f"rational must be written 'num/den', got {s!r}")
        value = Fraction(s)
        if f"{value.numerator}/{value.denominator}" != s:
            raise ValueError(f"rational {s!r} is not in lowest terms")
        return value

    def sample(self, rng, bound: int):
        return Fraction(rng.randint(-bound, bound))

    def sample_set(self, bound: int) -> list:
        return [Fraction(k) for k in range(-bound, bound + 1)]


class PrimeField(Field):
    def __init__(self, p: int):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.characteristic = p
        self.p = p
        self.name = f"GF({p})"
        self.zero = 0
        self.one = 1

    def __call__(self, value) -> int:
        if isinstance(value, Fraction):
            if value.denominator % self.p == 0:
                raise ZeroDivisionError(f"denominator {value.denominator} vanishes mod {self.p}")
            return value.numerator * pow(value.denominator, -1, self.p) % self.p
        if isinstance(value, str):
            return self(Fraction(value))
        return int(value) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return -a % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError(f"inverse of zero in {self.name}")
        return pow(a, -1, self.p)

    def div(self, a, b):
        return a * self.inv(b) % self.p

    def to_str(self, a) -> str:
        return str(a)

    def from_str(self, s: str) -> int:
        if not re.fullmatch(r"0|[1-9]\d*", s):
            raise ValueError(f"residue must be a non-negative integer, got {s!r}")
        value = int(s)
        if value >= self.p:
            raise ValueError(f"residue {value} not reduced mod {self.p}")
        return value

    def sample(self, rng, bound: int):
        # bound is irrelevant over a finite field: sample uniformly
        return rng.randrange(self.p)

    def sample_set(self, bound: int) -> list:
        return list(range(self.p))


QQ = RationalField()


def GF(p: int) -> PrimeField:
    return PrimeField(p)


def field_from_spec(spec: str) -> Field:
    """Parse ``Q``/``QQ`` or ``GF(p)``/``F_p``/``Fp``/``GF p`` into a field."""
    s = spec.strip()
    if s in ("Q", "QQ"):
        return QQ
    m = re.fullmatch(r"(?:GF|F)[_ (]?\s*(\d+)\s*\)?", s)
    if m and (s.endswith(")") == ("(" in s)):
        return PrimeField(int(m.group(1)))
    raise ValueError(f"unknown field {spec!r}; expected Q or GF(p)")
