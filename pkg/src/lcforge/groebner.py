"""Groebner bases and the ideal-theoretic algorithms built on them.

Buchberger's algorithm with the Gebauer-Moeller pair update (which subsumes
the coprime and chain criteria) and normal-strategy pair selection.  Over
QQ the inner loop runs on primitive integer polynomials; over GF(p) on
residues.  Results are always handed out as reduced, monic bases.
"""

from __future__ import annotations

import contextvars
import heapq
import threading
from contextlib import contextmanager
from dataclasses import dataclass
from itertools import combinations
from fractions import Fraction
from math import gcd

from .errors import NonHomogeneousError, ResourceExhausted, RingMismatchError
from .fields import QQ
from .rings import GREVLEX, MonomialOrder, Polynomial, RingContext

DEFAULT_STEP_LIMIT = 10**6

_step_limit = contextvars.ContextVar("step_limit", default=DEFAULT_STEP_LIMIT)


@contextmanager
def step_limit(limit: int):
    """Temporarily change the reduction-step budget of every GB computation."""
    token = _step_limit.set(limit)
    try:
        yield
    finally:
        _step_limit.reset(token)


class _Budget:
    __slots__ = ("steps", "limit")

    def __init__(self):
        self.steps = 0
        self.limit = _step_limit.get()

    def tick(self):
        self.steps += 1
        if self.steps > self.limit:
            raise ResourceExhausted(self.steps, self.limit)


def _divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a, b):
    return tuple(x if x > y else y for x, y in zip(a, b))


def _coprime(a, b) -> bool:
    return all(not (x and y) for x, y in zip(a, b))


# ---------------------------------------------------------------------------
# coefficient domains for the inner loop
# ---------------------------------------------------------------------------


class _IntDomain:
    """QQ computations on primitive integer polynomials (fraction free)."""

    def __init__(self):
        self.field = QQ

    def prepare(self, terms):
        den = 1
        for c in terms.values():
            den = den * c.denominator // gcd(den, c.denominator)
        p = {e: int(c * den) for e, c in terms.items()}
        return self.primitive(p)

    @staticmethod
    def primitive(p):
        g = 0
        for c in p.values():
            g = gcd(g, c)
            if g == 1:
                return p
        if g > 1:
            return {e: c // g for e, c in p.items()}
        return p

    def reduce(self, p, lead, g, glm, key, budget, full: bool):
        """Reduce p by the basis (list of (terms, lm)); returns (remainder, scale).

        The true remainder equals remainder / scale.
        """
        scale = Fraction(1)
        rem = {}
        p = dict(p)
        while p:
            e = max(p, key=key)
            div = None
            for t, lm in g:
                if _divides(lm, e):
                    div = (t, lm)
                    break
            if div is None:
                if not full:
                    rem.update(p)
                    break
                rem[e] = p.pop(e)
                continue
            budget.tick()
            t, lm = div
            a = p[e]
            b = t[lm]
            d = gcd(a, b)
            a //= d
            b //= d
            if b < 0:
                a, b = -a, -b
            if b != 1:
                for k in p:
                    p[k] *= b
                for k in rem:
                    rem[k] *= b
                scale *= b
            q = tuple(x - y for x, y in zip(e, lm))
            for te, tc in t.items():
                ne = tuple(x + y for x, y in zip(te, q))
                v = p.get(ne, 0) - a * tc
                if v:
                    p[ne] = v
                else:
                    p.pop(ne, None)
            if len(rem) + len(p) > 0 and b != 1:
                # keep coefficient size under control
                cont = 0
                for c in p.values():
                    cont = gcd(cont, c)
                    if cont == 1:
                        break
                if cont != 1:
                    for c in rem.values():
                        cont = gcd(cont, c)
                        if cont == 1:
                            break
                if cont > 1:
                    p = {k: c // cont for k, c in p.items()}
                    rem = {k: c // cont for k, c in rem.items()}
                    scale /= cont
        return rem, scale

    def spoly(self, f, flm, g, glm):
        l = _lcm(flm, glm)
        a, b = f[flm], g[glm]
        d = gcd(a, b)
        ma, mb = b // d, a // d  # ma*f*(l/flm) - mb*g*(l/glm)
        qf = tuple(x - y for x, y in zip(l, flm))
        qg = tuple(x - y for x, y in zip(l, glm))
        out = {}
        for e, c in f.items():
            ne = tuple(x + y for x, y in zip(e, qf))
            out[ne] = c * ma
        for e, c in g.items():
            ne = tuple(x + y for x, y in zip(e, qg))
            v = out.get(ne, 0) - c * mb
            if v:
                out[ne] = v
            else:
                out.pop(ne, None)
        return out

    def finish(self, p, lm):
        lc = p[lm]
        return {e: Fraction(c, lc) for e, c in p.items()}


class _ModDomain:
    """GF(p) computations on residues."""

    def __init__(self, field):
        self.field = field
        self.p = field.p

    def prepare(self, terms):
        return dict(terms)

    def reduce(self, p, lead, g, glm, key, budget, full: bool):
        P = self.p
        rem = {}
        p = dict(p)
        while p:
            e = max(p, key=key)
            div = None
            for t, lm in g:
                if _divides(lm, e):
                    div = (t, lm)
                    break
            if div is None:
                if not full:
                    rem.update(p)
                    break
                rem[e] = p.pop(e)
                continue
            budget.tick()
            t, lm = div
            c = p[e] * pow(t[lm], -1, P) % P
            q = tuple(x - y for x, y in zip(e, lm))
            for te, tc in t.items():
                ne = tuple(x + y for x, y in zip(te, q))
                v = (p.get(ne, 0) - c * tc) % P
                if v:
                    p[ne] = v
                else:
                    p.pop(ne, None)
        return rem, 1

    def spoly(self, f, flm, g, glm):
        P = self.p
        l = _lcm(flm, glm)
        ca = pow(f[flm], -1, P)
        cb = pow(g[glm], -1, P)
        qf = tuple(x - y for x, y in zip(l, flm))
        qg = tuple(x - y for x, y in zip(l, glm))
        out = {}
        for e, c in f.items():
            out[tuple(x + y for x, y in zip(e, qf))] = c * ca % P
        for e, c in g.items():
            ne = tuple(x + y for x, y in zip(e, qg))
            v = (out.get(ne, 0) - c * cb) % P
            if v:
                out[ne] = v
            else:
                out.pop(ne, None)
        return out

    def finish(self, p, lm):
        inv = pow(p[lm], -1, self.p)
        return {e: c * inv % self.p for e, c in p.items()}


def _domain(field):
    return _IntDomain() if field.characteristic == 0 else _ModDomain(field)


# ---------------------------------------------------------------------------
# Buchberger
# ---------------------------------------------------------------------------


def _buchberger(ring: RingContext, polys, order: MonomialOrder):
    key = order.key
    dom = _domain(ring.field)
    budget = _Budget()

    basis = []  # list of (terms, lm); indices are stable
    active = []  # indices of the current minimal basis
    pairs = []  # heap of (key(lcm), i, j, lcm)

    def reducers():
        return [basis[i] for i in active]

    def update(h_idx):
        nonlocal active, pairs
        hlm = basis[h_idx][1]
        lcms = {i: _lcm(basis[i][1], hlm) for i in active}
        C = list(active)
        D = []
        while C:
            g1 = C.pop(0)
            l1 = lcms[g1]
            if _coprime(basis[g1][1], hlm) or (
                not any(_divides(lcms[g2], l1) for g2 in C)
                and not any(_divides(lcms[g2], l1) for g2 in D)
            ):
                D.append(g1)
        E = [g for g in D if not _coprime(basis[g][1], hlm)]
        kept = []
        for item in pairs:
            _, i, j, l = item
            if (
                not _divides(hlm, l)
                or lcms.get(i, _lcm(basis[i][1], hlm)) == l
                or lcms.get(j, _lcm(basis[j][1], hlm)) == l
            ):
                kept.append(item)
        for g in E:
            l = lcms[g]
            kept.append((key(l), min(g, h_idx), max(g, h_idx), l))
        heapq.heapify(kept)
        pairs = kept
        active = [i for i in active if not _divides(hlm, basis[i][1])] + [h_idx]

    def insert(terms):
        rem, _ = dom.reduce(terms, None, reducers(), None, key, budget, full=False)
        if not rem:
            return
        if dom.field.characteristic == 0:
            rem = dom.primitive(rem)
        lm = max(rem, key=key)
        if not any(lm):
            # constant: the ideal is the whole ring
            raise _UnitIdeal
        basis.append((rem, lm))
        update(len(basis) - 1)

    try:
        for p in polys:
            if p:
                insert(dom.prepare(p))
        while pairs:
            _, i, j, _l = heapq.heappop(pairs)
            f, flm = basis[i]
            g, glm = basis[j]
            budget.tick()
            insert(dom.spoly(f, flm, g, glm))
    except _UnitIdeal:
        return [ring.one]

    # interreduce the minimal basis
    mins = sorted((basis[i] for i in active), key=lambda t: key(t[1]))
    out = []
    for n, (t, lm) in enumerate(mins):
        others = [m for k, m in enumerate(mins) if k != n]
        rem, _ = dom.reduce(t, None, others, None, key, budget, full=True)
        out.append(Polynomial(ring, dom.finish(rem, lm), _clean=True))
    out.sort(key=lambda p: key(p.leading_monomial(order)), reverse=True)
    return out


class _UnitIdeal(Exception):
    pass


@dataclass(frozen=True)
class GroebnerBasis:
    polys: tuple
    order: MonomialOrder
    ring: RingContext
    reduced: bool = True

    def __iter__(self):
        return iter(self.polys)

    def __len__(self):
        return len(self.polys)

    def is_unit(self) -> bool:
        return len(self.polys) == 1 and self.polys[0].is_constant()

    def leading_monomials(self):
        return [p.leading_monomial(self.order) for p in self.polys]

    def normal_form(self, f: Polynomial) -> Polynomial:
        return normal_form(f, self)


def groebner_basis(ideal, order: MonomialOrder = GREVLEX) -> GroebnerBasis:
    """Reduced Groebner basis of ``ideal`` (an Ideal or a list of polynomials)."""
    if isinstance(ideal, Ideal):
        return ideal.groebner(order)
    return Ideal(ideal).groebner(order)


def _compute_gb(ring, gens, order) -> GroebnerBasis:
    polys = [dict(g) if isinstance(g, dict) else dict(g.terms) for g in gens]
    polys = [g for g in polys if g]
    if not polys:
        return GroebnerBasis((), order, ring)
    return GroebnerBasis(tuple(_buchberger(ring, polys, order)), order, ring)


def normal_form(f: Polynomial, G: GroebnerBasis) -> Polynomial:
    """The unique remainder of f on division by the reduced basis G."""
    if f.ring != G.ring:
        raise RingMismatchError(f"ring mismatch: {f.ring} vs {G.ring}")
    if not f.terms or not G.polys:
        return f
    ring = f.ring
    key = G.order.key
    dom = _domain(ring.field)
    budget = _Budget()
    if ring.field.characteristic == 0:
        # exact remainder: track the integer scale introduced by the domain
        den = 1
        for c in f.terms.values():
            den = den * c.denominator // gcd(den, c.denominator)
        start = {e: int(c * den) for e, c in f.terms.items()}
        red = [(dom.prepare(g.terms), g.leading_monomial(G.order)) for g in G.polys]
        rem, scale = dom.reduce(start, None, red, None, key, budget, full=True)
        factor = Fraction(1) / (Fraction(scale) * den)
        return Polynomial(ring, {e: c * factor for e, c in rem.items()}, _clean=True)
    red = [(g.terms, g.leading_monomial(G.order)) for g in G.polys]
    rem, _ = dom.reduce(dict(f.terms), None, red, None, key, budget, full=True)
    return Polynomial(ring, rem, _clean=True)


def spair_criterion_holds(G: GroebnerBasis) -> bool:
    """Buchberger's criterion: every S-polynomial reduces to zero modulo G."""
    ring = G.ring
    for f, g in combinations(G.polys, 2):
        flm = f.leading_monomial(G.order)
        glm = g.leading_monomial(G.order)
        l = _lcm(flm, glm)
        s = f.shift(tuple(a - b for a, b in zip(l, flm))).scale(
            ring.field.inv(f.terms[flm])
        ) - g.shift(tuple(a - b for a, b in zip(l, glm))).scale(ring.field.inv(g.terms[glm]))
        if normal_form(s, G):
            return False
    return True


def is_reduced_basis(G: GroebnerBasis) -> bool:
    lms = G.leading_monomials()
    for p, lm in zip(G.polys, lms):
        if p.terms[lm] != 1:
            return False
        for q, qlm in zip(G.polys, lms):
            if q is p:
                continue
            if any(_divides(qlm, e) for e in p.terms):
                return False
    return True


# ---------------------------------------------------------------------------
# Ideals
# ---------------------------------------------------------------------------


class Ideal:
    """Finitely generated ideal in a fixed ring, with a per-order GB cache."""

    def __init__(self, gens, ring: RingContext | None = None):
        gens = list(gens)
        if ring is None:
            if not gens:
                raise ValueError("ring must be given for an ideal without generators")
            ring = gens[0].ring
        seen, clean = set(), []
        for g in gens:
            if g.ring != ring:
                raise RingMismatchError(f"generator {g} not in {ring}")
            if g and g not in seen:
                seen.add(g)
                clean.append(g)
        self.ring = ring
        self.gens = tuple(clean)
        self._cache: dict = {}
        self._lock = threading.Lock()

    def __repr__(self):
        return f"Ideal({', '.join(map(str, self.gens)) or '0'})"

    @property
    def homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.gens)

    def require_homogeneous(self, what: str = "ideal"):
        for g in self.gens:
            if not g.is_homogeneous():
                raise NonHomogeneousError(f"{what} has non-homogeneous generator {g}")

    def groebner(self, order: MonomialOrder = GREVLEX) -> GroebnerBasis:
        tag = order.tag()
        cached = self._cache.get(tag)
        if cached is not None:
            return cached
        with self._lock:
            cached = self._cache.get(tag)
            if cached is None:
                cached = _compute_gb(self.ring, self.gens, order)
                self._cache[tag] = cached
        return cached

    def canonical(self) -> tuple:
        """Reduced grevlex basis: the canonical form used for ideal equality."""
        return self.groebner(GREVLEX).polys

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        return self.ring == other.ring and self.canonical() == other.canonical()

    def __hash__(self):
        return hash((self.ring, self.canonical()))

    def __add__(self, other):
        if isinstance(other, Ideal):
            return Ideal(self.gens + other.gens, self.ring)
        if isinstance(other, Polynomial):
            return Ideal(self.gens + (other,), self.ring)
        return Ideal(self.gens + tuple(other), self.ring)

    def __mul__(self, other: "Ideal") -> "Ideal":
        return Ideal([a * b for a in self.gens for b in other.gens], self.ring)

    def is_zero(self) -> bool:
        return not self.gens

    def is_unit(self) -> bool:
        return self.groebner(GREVLEX).is_unit()

    def contains(self, f: Polynomial) -> bool:
        return ideal_membership(f, self)

    def contains_ideal(self, other: "Ideal") -> bool:
        return all(self.contains(g) for g in other.gens)


def ideal_membership(f: Polynomial, I: Ideal) -> bool:
    if f.is_zero():
        return True
    return normal_form(f, I.groebner(GREVLEX)).is_zero()


# ---------------------------------------------------------------------------
# elimination, quotients, saturation
# ---------------------------------------------------------------------------


def _eliminate_prefix(ext_ring: RingContext, polys, k: int, target: RingContext):
    """GB of polys in ext_ring w.r.t. elimination order on the first k variables;
    the survivors free of those variables, mapped down to ``target``."""
    G = _compute_gb(ext_ring, polys, MonomialOrder.elimination(k))
    out = []
    for g in G.polys:
        if all(not any(e[:k]) for e in g.terms):
            out.append(Polynomial(target, {e[k:]: c for e, c in g.terms.items()}, _clean=True))
    return out


def _lift(f: Polynomial, ext_ring: RingContext, k: int) -> Polynomial:
    return Polynomial(ext_ring, {(0,) * k + e: c for e, c in f.terms.items()}, _clean=True)


def elimination_ideal(I: Ideal, keep) -> Ideal:
    """I intersected with k[keep]; the result lives in I's ring."""
    ring = I.ring
    keep_idx = sorted({ring.index(v) if isinstance(v, str) else int(v) for v in keep})
    drop_idx = [i for i in range(ring.nvars) if i not in keep_idx]
    if not drop_idx:
        return Ideal(I.gens, ring)
    perm = drop_idx + keep_idx  # new position -> old index
    ext = RingContext([ring.names[i] for i in perm], ring.field)
    pos = {old: new for new, old in enumerate(perm)}
    mapped = [g.map_ring(ext, [pos[i] for i in range(ring.nvars)]) for g in I.gens]
    k = len(drop_idx)
    G = _compute_gb(ext, [dict(m.terms) for m in mapped], MonomialOrder.elimination(k))
    back = [perm.index(i) for i in range(ring.nvars)]  # old -> new position
    out = []
    for g in G.polys:
        if all(not any(e[:k]) for e in g.terms):
            out.append(
                Polynomial(ring, {tuple(e[back[i]] for i in range(ring.nvars)): c for e, c in g.terms.items()}, _clean=True)
            )
    return Ideal(out, ring)


def intersection(I: Ideal, J: Ideal) -> Ideal:
    """I cap J via elimination of t from t*I + (1 - t)*J."""
    ring = I.ring
    if I.is_zero() or J.is_zero():
        return Ideal([], ring)
    ext = ring.with_prefix(["_t"])
    t = ext.gen(0)
    polys = [dict((t * _lift(f, ext, 1)).terms) for f in I.gens]
    polys += [dict(((1 - t) * _lift(g, ext, 1)).terms) for g in J.gens]
    return Ideal(_eliminate_prefix(ext, polys, 1, ring), ring)


def exact_divide(f: Polynomial, g: Polynomial) -> Polynomial:
    """f / g, assuming g divides f exactly."""
    ring = f.ring
    field = ring.field
    glm = g.leading_monomial()
    glc = g.terms[glm]
    quotient = {}
    rem = f
    while rem:
        lm = rem.leading_monomial()
        if not _divides(glm, lm):
            raise ValueError(f"{g} does not divide {f}")
        q = tuple(a - b for a, b in zip(lm, glm))
        c = field.div(rem.terms[lm], glc)
        quotient[q] = c
        rem = rem - g.shift(q).scale(c)
    return Polynomial(ring, quotient)


def ideal_quotient(I: Ideal, g: Polynomial) -> Ideal:
    """I : (g) = {f : f*g in I}, via (I cap (g)) / g."""
    if g.is_zero():
        raise ValueError("ideal quotient by the zero polynomial")
    ring = I.ring
    if g.is_constant():
        return Ideal(I.gens, ring)
    if I.is_zero():
        return Ideal([], ring)
    inter = intersection(I, Ideal([g], ring))
    return Ideal([exact_divide(h, g) for h in inter.gens], ring)


def quotient_by_ideal(I: Ideal, J: Ideal) -> Ideal:
    """I : J as the intersection of I : (g) over the generators of J."""
    out = None
    for g in J.gens:
        q = ideal_quotient(I, g)
        out = q if out is None else intersection(out, q)
    return out if out is not None else Ideal([I.ring.one], I.ring)


def saturation(I: Ideal, g: Polynomial) -> Ideal:
    """I : g^infinity, by iterating ideal quotients to a fixed point."""
    if g.is_zero():
        raise ValueError("saturation by the zero polynomial")
    current = Ideal(I.gens, I.ring)
    while True:
        nxt = ideal_quotient(current, g)
        if nxt == current:
            return current
        current = nxt


def saturate_irrelevant(I: Ideal) -> Ideal:
    """I : (x_1, ..., x_n)^infinity, the intersection of the saturations by each x_i."""
    out = None
    for x in I.ring.gens():
        s = saturation(I, x)
        if out is None or out.is_unit():
            out = s
        elif not s.is_unit():
            out = intersection(out, s)
    # canonical generators
    return Ideal(out.canonical(), I.ring)


def radical_membership(f: Polynomial, I: Ideal) -> bool:
    """f in sqrt(I), via 1 in I + (1 - t*f) (Rabinowitsch)."""
    if f.is_zero():
        return True
    ring = I.ring
    ext = ring.with_prefix(["_t"])
    t = ext.gen(0)
    polys = [_lift(g, ext, 1) for g in I.gens] + [1 - t * _lift(f, ext, 1)]
    return Ideal(polys, ext).is_unit()


# ---------------------------------------------------------------------------
# dimension
# ---------------------------------------------------------------------------


def _max_independent_set(lms, n: int) -> int:
    for size in range(n, -1, -1):
        for S in combinations(range(n), size):
            Sset = set(S)
            if not any(all(i in Sset for i, x in enumerate(m) if x) for m in lms):
                return size
    return -1


def affine_dimension(I: Ideal) -> int:
    """Krull dimension of k[x]/I; -1 for the unit ideal."""
    G = I.groebner(GREVLEX)
    if G.is_unit():
        return -1
    return _max_independent_set(G.leading_monomials(), I.ring.nvars)


def projective_dimension(I: Ideal) -> int:
    """Dimension of V(I) in P^{n-1}; -1 encodes the empty scheme."""
    I.require_homogeneous()
    d = affine_dimension(I)
    return max(d - 1, -1)


def _minimalize(monos):
    monos = sorted(set(monos), key=sum)
    out = []
    for m in monos:
        if not any(_divides(g, m) for g in out):
            out.append(m)
    return out


def _poly_sub(a, b):
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]


def hilbert_numerator(monos, n: int) -> list[int]:
    """Numerator N(t) of the Hilbert series N(t)/(1-t)^n of k[x]/(monos)."""
    monos = _minimalize(monos)
    if not monos:
        return [1]
    if any(sum(m) == 0 for m in monos):
        return [0]
    # product of (1 - t^deg) when generators are pairwise coprime
    if all(_coprime(a, b) for a, b in combinations(monos, 2)):
        num = [1]
        for m in monos:
            d = sum(m)
            shifted = [0] * d + num
            num = _poly_sub(num, shifted)
        return num
    last, rest = monos[-1], monos[:-1]
    colon = [tuple(max(x - y, 0) for x, y in zip(m, last)) for m in rest]
    a = hilbert_numerator(rest, n)
    b = hilbert_numerator(colon, n)
    d = sum(last)
    return _poly_sub(a, [0] * d + b)


def hilbert_dimension(I: Ideal) -> int:
    """Dimension read off the pole order at t = 1 of the Hilbert series of the
    leading-term ideal; -1 for the unit ideal."""
    I.require_homogeneous()
    G = I.groebner(GREVLEX)
    n = I.ring.nvars
    num = hilbert_numerator(G.leading_monomials(), n)
    while num and num[-1] == 0:
        num.pop()
    if not num:
        return -1
    order = 0
    while sum(num) == 0:
        # synthetic division by (1 - t)
        q, acc = [], 0
        for c in num[:-1]:
            acc += c
            q.append(acc)
        num = q
        order += 1
    return n - order


def ideal_equal(I: Ideal, J: Ideal) -> bool:
    return I == J
