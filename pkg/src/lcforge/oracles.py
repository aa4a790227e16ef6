"""Brute-force cross-checks over small prime fields.

These share nothing with the Groebner engine: points are enumerated
directly and the zero-divisor test is dense linear algebra on truncated
graded pieces.  Enumeration bounds are hard limits.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement, product

from .errors import InputError
from .fields import PrimeField

MAX_VARS = 5
MAX_PRIME = 11


@dataclass(frozen=True)
class PointSet:
    p: int
    points: tuple  # normalized: first nonzero coordinate is 1

    def __len__(self):
        return len(self.points)

    def __contains__(self, pt):
        return tuple(pt) in self.points


def _prime_of(ring) -> int:
    f = ring.field
    if not isinstance(f, PrimeField):
        raise InputError(f"oracle needs a prime field, got {f}")
    return f.p


def projective_points(n: int, p: int):
    """All normalized points of P^{n-1}(F_p), in a fixed order."""
    for lead in range(n):
        for tail in product(range(p), repeat=n - lead - 1):
            yield (0,) * lead + (1,) + tail


def _vanishes(poly, pt, p) -> bool:
    total = 0
    for e, c in poly.terms.items():
        t = c
        for x, k in zip(pt, e):
            if k:
                t = t * pow(x, k, p) % p
        total += t
    return total % p == 0


def brute_force_points(I) -> PointSet:
    """Every point of projective space over F_p where all generators vanish."""
    ring = I.ring
    p = _prime_of(ring)
    if ring.nvars > MAX_VARS or p > MAX_PRIME:
        raise InputError(f"enumeration bound exceeded: {ring.nvars} variables over F_{p} (limits {MAX_VARS}, {MAX_PRIME})")
    gens = list(I.gens)
    pts = tuple(pt for pt in projective_points(ring.nvars, p) if all(_vanishes(g, pt, p) for g in gens))
    return PointSet(p, pts)


def containment_oracle(A, B) -> bool:
    """Points of V(A) form a subset of the points of V(B)."""
    pa = brute_force_points(A)
    pb = set(brute_force_points(B).points)
    return all(pt in pb for pt in pa.points)


# ---------------------------------------------------------------------------
# truncated graded linear algebra
# ---------------------------------------------------------------------------


def _monomials(n: int, d: int) -> list:
    out = []
    for combo in combinations_with_replacement(range(n), d):
        e = [0] * n
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return out


def _rank_mod_p(rows, p) -> int:
    """Rank of sparse rows (dict column -> value) over F_p."""
    pivots = {}  # column -> reduced row with 1 at that column
    rank = 0
    for row in rows:
        row = {k: v % p for k, v in row.items() if v % p}
        while row:
            col = max(row)
            if col in pivots:
                c = row[col]
                for k, v in pivots[col].items():
                    nv = (row.get(k, 0) - c * v) % p
                    if nv:
                        row[k] = nv
                    else:
                        row.pop(k, None)
                continue
            inv = pow(row[col], p - 2, p)
            pivots[col] = {k: v * inv % p for k, v in row.items()}
            rank += 1
            break
    return rank


def _shifted(poly, m, p) -> dict:
    out = {}
    for e, c in poly.terms.items():
        k = tuple(a + b for a, b in zip(e, m))
        out[k] = (out.get(k, 0) + c) % p
    return out


def _degree(poly) -> int:
    degs = {sum(e) for e in poly.terms}
    if len(degs) != 1:
        raise InputError(f"oracle needs homogeneous input, got {poly}")
    return degs.pop()


def _piece(gens, n, d, p) -> list:
    rows = []
    for f, df in gens:
        if df <= d:
            rows.extend(_shifted(f, m, p) for m in _monomials(n, d - df))
    return rows


def brute_force_zerodivisor(g, I, deg_bound: int) -> bool:
    """Whether multiplication by g has a kernel on (R/I)_d for some d with
    d + deg g <= deg_bound.

    The kernel in degree d is {h in R_d : g h in I_{d+e}} / I_d, whose
    dimension is dim R_d - rank(g R_d mod I_{d+e}) - dim I_d.
    """
    ring = I.ring
    p = _prime_of(ring)
    n = ring.nvars
    if n > MAX_VARS or p > MAX_PRIME:
        raise InputError("enumeration bound exceeded")
    if g.is_zero():
        # 0 kills everything nonzero in the quotient
        return any(len(_monomials(n, d)) > _rank_mod_p(_piece([(f, _degree(f)) for f in I.gens], n, d, p), p) for d in range(deg_bound + 1))
    e = _degree(g)
    gens = [(f, _degree(f)) for f in I.gens]
    for d in range(0, deg_bound - e + 1):
        mons = _monomials(n, d)
        I_d = _rank_mod_p(_piece(gens, n, d, p), p)
        upper = _piece(gens, n, d + e, p)
        r_upper = _rank_mod_p(upper, p)
        r_joint = _rank_mod_p(upper + [_shifted(g, m, p) for m in mons], p)
        preimage = len(mons) - (r_joint - r_upper)
        if preimage > I_d:
            return True
    return False
