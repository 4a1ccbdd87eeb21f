"""Fraction-free exact linear algebra over Q.

Rows are scaled to primitive integer vectors and eliminated with integer
cross-multiplication, dividing out the row content after each step so
entries stay small.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd, lcm


def _primitive(row):
    g = reduce(gcd, row, 0)
    if g > 1:
        row = [x // g for x in row]
    for x in row:
        if x:
            if x < 0:
                row = [-y for y in row]
            break
    return row


def to_integer_row(row) -> list:
    """Scale a rational row to a primitive integer row (same span)."""
    row = [Fraction(x) for x in row]
    den = reduce(lcm, (x.denominator for x in row), 1)
    return _primitive([int(x * den) for x in row])


def echelon(rows, ncols=None):
    """Reduced echelon form of the span of ``rows`` with integer rows.

    Returns ``(basis, pivots)``: each basis row is primitive, nonzero in its
    pivot column and zero in every other pivot column.
    """
    rows = [to_integer_row(r) for r in rows]
    rows = [r for r in rows if any(r)]
    if not rows:
        return [], []
    ncols = ncols if ncols is not None else len(rows[0])
    basis: list = []
    pivots: list = []
    for r in rows:
        for b, p in zip(basis, pivots):
            if r[p]:
                f, g = b[p], r[p]
                r = [f * x - g * y for x, y in zip(r, b)]
        if not any(r):
            continue
        r = _primitive(r)
        p = next(i for i, x in enumerate(r) if x)
        for k, (b, q) in enumerate(zip(basis, pivots)):
            if b[p]:
                f, g = r[p], b[p]
                basis[k] = _primitive([f * x - g * y for x, y in zip(b, r)])
        basis.append(r)
        pivots.append(p)
    order = sorted(range(len(pivots)), key=pivots.__getitem__)
    return [basis[i] for i in order], [pivots[i] for i in order]


def rank(rows) -> int:
    return len(echelon(rows)[0])


def nullspace(rows, ncols: int) -> list:
    """Basis (rational vectors) of ``{x : row . x = 0 for all rows}``."""
    basis, pivots = echelon(rows, ncols) if rows else ([], [])
    free = [c for c in range(ncols) if c not in set(pivots)]
    out = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for b, p in zip(basis, pivots):
            v[p] = Fraction(-b[f], b[p])
        out.append(v)
    return out


def in_span(vec, basis_pivots) -> bool:
    basis, pivots = basis_pivots
    r = to_integer_row(vec)
    for b, p in zip(basis, pivots):
        if r[p]:
            f, g = b[p], r[p]
            r = [f * x - g * y for x, y in zip(r, b)]
    return not any(r)


def matmul(a, b):
    n, m, k = len(a), len(b), len(b[0])
    return [[sum(a[i][l] * b[l][j] for l in range(m)) for j in range(k)] for i in range(n)]


def is_nilpotent_matrix(a) -> bool:
    n = len(a)
    p = a
    for _ in range(n - 1):
        p = matmul(p, a)
    return all(x == 0 for row in p for x in row)
