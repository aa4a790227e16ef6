"""Exact linear algebra over a field, graded pieces and Jacobians."""

from __future__ import annotations

from itertools import combinations

from .errors import NonHomogeneousError
from .rings import GREVLEX, Polynomial, grevlex_key, monomials_of_degree


def row_reduce(rows, field, key=grevlex_key):
    """Reduced row echelon form of sparse rows (dicts column -> value).

    Columns are processed in descending ``key`` order, so pivots are the
    leading monomials and the output is canonical for the row space.
    Returns the nonzero reduced rows sorted by pivot, descending.
    """
    pivots = {}  # pivot column -> row (pivot entry 1)
    for row in rows:
        row = {c: v for c, v in row.items() if v != 0}
        while row:
            lead = max(row, key=key)
            if lead in pivots:
                c = row[lead]
                for col, v in pivots[lead].items():
                    nv = field.sub(row.get(col, field.zero), field.mul(c, v))
                    if nv:
                        row[col] = nv
                    else:
                        row.pop(col, None)
                continue
            inv = field.inv(row[lead])
            row = {col: field.mul(v, inv) for col, v in row.items()}
            # keep the basis fully reduced
            for p, prow in pivots.items():
                if lead in prow:
                    c = prow[lead]
                    for col, v in row.items():
                        nv = field.sub(prow.get(col, field.zero), field.mul(c, v))
                        if nv:
                            prow[col] = nv
                        else:
                            prow.pop(col, None)
            pivots[lead] = row
            break
    return [pivots[p] for p in sorted(pivots, key=key, reverse=True)]


def rank(rows, field) -> int:
    return len(row_reduce(rows, field, key=lambda c: c))


def determinant(matrix, field):
    """Determinant of a square list-of-lists matrix of field elements."""
    n = len(matrix)
    m = [[field(v) for v in row] for row in matrix]
    det = field.one
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return field.zero
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = field.neg(det)
        det = field.mul(det, m[col][col])
        inv = field.inv(m[col][col])
        for r in range(col + 1, n):
            if m[r][col] != 0:
                c = field.mul(m[r][col], inv)
                m[r] = [field.sub(a, field.mul(c, b)) for a, b in zip(m[r], m[col])]
    return det


def graded_piece_basis(gens, d: int) -> list[Polynomial]:
    """Basis of the degree-d part of the ideal generated by homogeneous ``gens``.

    Each generator is multiplied by every monomial of complementary degree
    and the products are row reduced; the result is the reduced echelon
    basis, ordered by leading monomial (grevlex, descending).
    """
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return []
    ring = gens[0].ring
    rows = []
    for g in gens:
        gd = g.homogeneous_degree()
        if gd is None:
            raise NonHomogeneousError(f"generator {g} is not homogeneous")
        if gd > d:
            continue
        for m in monomials_of_degree(ring.nvars, d - gd):
            rows.append(g.shift(m).terms)
    reduced = row_reduce(rows, ring.field)
    return [Polynomial(ring, r, _clean=True) for r in reduced]


def jacobian_matrix(fs) -> list[list[Polynomial]]:
    fs = list(fs)
    if not fs:
        return []
    ring = fs[0].ring
    for f in fs:
        f._check(fs[0])
    return [[f.derivative(j) for j in range(ring.nvars)] for f in fs]


def _det_poly(M, rows, cols, memo):
    key = (rows, cols)
    if key in memo:
        return memo[key]
    if len(rows) == 1:
        val = M[rows[0]][cols[0]]
    else:
        # Laplace expansion along the first row
        r0, rest = rows[0], rows[1:]
        val = None
        for j, c in enumerate(cols):
            entry = M[r0][c]
            if entry.is_zero():
                continue
            sub = _det_poly(M, rest, cols[:j] + cols[j + 1 :], memo)
            term = entry * sub
            if j % 2:
                term = -term
            val = term if val is None else val + term
        if val is None:
            val = M[r0][cols[0]].ring.zero
    memo[key] = val
    return val


def minors_ideal(M, k: int, ring=None) -> list[Polynomial]:
    """All nonzero k x k minors of M (distinct, in a deterministic order).

    ``k = 0`` gives the unit ideal ``[1]``.  ``ring`` is only needed when M
    has no entries.
    """
    if ring is None:
        ring = M[0][0].ring
    if k == 0:
        return [ring.one]
    nrows = len(M)
    ncols = len(M[0]) if M else 0
    if k > min(nrows, ncols):
        raise ValueError(f"minor size {k} exceeds matrix shape {nrows}x{ncols}")
    memo = {}
    out, seen = [], set()
    for rows in combinations(range(nrows), k):
        for cols in combinations(range(ncols), k):
            m = _det_poly(M, rows, cols, memo)
            if not m.is_zero() and m not in seen:
                seen.add(m)
                out.append(m)
    return out


def sorted_polys(polys, order=GREVLEX):
    """Deterministic ordering of a polynomial list: by sorted term sequence."""
    key = order.key

    def k(p):
        return [(key(e), str(c)) for e, c in p.sorted_terms(order)]

    return sorted(polys, key=k, reverse=True)
