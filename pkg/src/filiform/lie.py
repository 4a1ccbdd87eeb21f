"""Lie brackets as structure-constant tables.

Basis elements are labelled ``X_1 .. X_n`` and every index in this module's
public API is 1-based, matching the labels.  Vectors are plain sequences of
length ``n`` whose position ``k`` holds the coefficient of ``X_{k+1}``.
Linear maps act on columns: column ``j`` of the matrix is the image of
``X_j``.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Callable, Iterator

from . import linalg
from .exact import RationalFunction, as_rf, rsum


class DimensionMismatch(ValueError):
    pass


class ParametricInput(ValueError):
    """Raised when a rank computation is asked of a bracket with parameters."""


class LieBracket:
    """Antisymmetric bilinear bracket on ``X_1..X_n``.

    Only ``i < j`` is stored; ``table[(i, j)]`` maps ``l`` to ``C^l_{i,j}``.
    """

    def __init__(self, dim: int, entries=None, name: str | None = None):
        self.dim = dim
        self.name = name
        self.table: dict = {}
        for (i, j, l), c in (entries or {}).items():
            self.add(i, j, l, c)

    def add(self, i, j, l, c):
        if not (1 <= i <= self.dim and 1 <= j <= self.dim and 1 <= l <= self.dim):
            raise DimensionMismatch(f"index ({i},{j},{l}) out of range for dim {self.dim}")
        if i == j:
            if as_rf(c):
                raise ValueError(f"C^{l}_{{{i},{i}}} must vanish")
            return
        c = as_rf(c)
        if i > j:
            i, j, c = j, i, -c
        row = self.table.setdefault((i, j), {})
        v = row.get(l)
        v = c if v is None else v + c
        if v:
            row[l] = v
        else:
            row.pop(l, None)
            if not row:
                del self.table[(i, j)]

    @classmethod
    def abelian(cls, dim: int) -> "LieBracket":
        return cls(dim)

    def copy(self, name=None) -> "LieBracket":
        out = LieBracket(self.dim, name=name or self.name)
        out.table = {k: dict(v) for k, v in self.table.items()}
        return out

    def bracket(self, i: int, j: int) -> dict:
        """``[X_i, X_j]`` as a sparse map ``l -> coefficient``."""
        if i < j:
            return self.table.get((i, j), {})
        if i > j:
            return {l: -c for l, c in self.table.get((j, i), {}).items()}
        return {}

    def constant(self, i: int, j: int, l: int) -> RationalFunction:
        return self.bracket(i, j).get(l, RationalFunction())

    def entries(self) -> Iterator:
        for (i, j) in sorted(self.table):
            for l in sorted(self.table[(i, j)]):
                yield (i, j, l), self.table[(i, j)][l]

    def map_entries(self, fn: Callable) -> "LieBracket":
        out = LieBracket(self.dim, name=self.name)
        for (i, j, l), c in self.entries():
            out.add(i, j, l, fn(c))
        return out

    def substitute(self, bindings: dict) -> "LieBracket":
        return self.map_entries(lambda c: c.substitute(bindings))

    def specialize(self, point: dict) -> "LieBracket":
        """Evaluate every constant at a rational point."""
        return self.map_entries(lambda c: RationalFunction.const(c.evaluate(point)) if c.variables() else c)

    def __add__(self, other: "LieBracket") -> "LieBracket":
        if other.dim != self.dim:
            raise DimensionMismatch("brackets of different dimension")
        out = self.copy()
        for (i, j, l), c in other.entries():
            out.add(i, j, l, c)
        return out

    def scale(self, c) -> "LieBracket":
        c = as_rf(c)
        return self.map_entries(lambda x: x * c)

    def variables(self) -> set:
        out = set()
        for _, c in self.entries():
            out |= c.variables()
        return out

    def is_parametric(self) -> bool:
        return any(c.variables() for _, c in self.entries())

    def __eq__(self, other):
        if not isinstance(other, LieBracket) or other.dim != self.dim:
            return NotImplemented
        return not (self + other.scale(-1)).table

    __hash__ = None

    def restrict(self, indices) -> "LieBracket":
        """The bracket of the subalgebra spanned by ``X_k, k in indices``,
        relabelled ``1..len(indices)`` in the given order."""
        pos = {k: n + 1 for n, k in enumerate(indices)}
        out = LieBracket(len(indices))
        for a, b in combinations(indices, 2):
            for l, c in self.bracket(a, b).items():
                if l not in pos:
                    raise ValueError(f"[X_{a}, X_{b}] leaves the span (component X_{l})")
                out.add(pos[a], pos[b], pos[l], c)
        return out

    def __repr__(self):
        return f"LieBracket(dim={self.dim}, name={self.name!r}, nnz={sum(len(v) for v in self.table.values())})"


def basis_vector(n: int, i: int, one=None) -> list:
    one = RationalFunction.const(1) if one is None else one
    zero = one * 0
    v = [zero] * n
    v[i - 1] = one
    return v


def bracket_apply(mu: LieBracket, x, y) -> list:
    """``mu(x, y)`` for coefficient vectors ``x`` and ``y``."""
    n = mu.dim
    if len(x) != n or len(y) != n:
        raise DimensionMismatch(f"vectors of length {len(x)}, {len(y)} for dim {n}")
    acc: dict = {}
    for (i, j), row in mu.table.items():
        w = x[i - 1] * y[j - 1] - x[j - 1] * y[i - 1]
        if not w:
            continue
        for l, c in row.items():
            acc.setdefault(l, []).append(w * c)
    zero = x[0] * 0 if n else 0
    out = [zero] * n
    for l, terms in acc.items():
        if isinstance(terms[0], RationalFunction):
            out[l - 1] = rsum(terms)
        else:
            out[l - 1] = sum(terms)
    return out


def _bracket_sparse(mu: LieBracket, u: dict, k: int) -> dict:
    """``[u, X_k]`` for a sparse vector ``u``."""
    acc: dict = {}
    for m, um in u.items():
        for l, c in mu.bracket(m, k).items():
            acc.setdefault(l, []).append(um * c)
    return {l: rsum(v) for l, v in acc.items()}


def jacobi_residuals(mu: LieBracket) -> list:
    """Nonzero coefficients of the Jacobiator on basis triples ``i<j<k``.

    Returns ``[((i, j, k, l), value), ...]``; empty iff ``mu`` is a Lie bracket.
    """
    out = []
    n = mu.dim
    for i, j, k in combinations(range(1, n + 1), 3):
        acc: dict = {}
        for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
            for l, v in _bracket_sparse(mu, mu.bracket(a, b), c).items():
                acc.setdefault(l, []).append(v)
        for l in sorted(acc):
            v = rsum(acc[l])
            if v:
                out.append(((i, j, k, l), v))
    return out


# --- rational (specialised) computations ------------------------------------

def rational_table(mu: LieBracket) -> dict:
    """``{(i, j): [(l, Fraction), ...]}`` for a parameter-free bracket."""
    out = {}
    for (i, j), row in mu.table.items():
        items = []
        for l, c in sorted(row.items()):
            if not c.is_constant():
                raise ParametricInput(f"C^{l}_{{{i},{j}}} = {c} is not constant; specialise parameters first")
            items.append((l, c.constant_value()))
        out[(i, j)] = items
    return out


def _rbracket(table: dict, n: int, x, y) -> list:
    out = [Fraction(0)] * n
    for (i, j), items in table.items():
        w = x[i - 1] * y[j - 1] - x[j - 1] * y[i - 1]
        if w:
            for l, c in items:
                out[l - 1] += w * c
    return out


def _unit(n, i):
    v = [Fraction(0)] * n
    v[i - 1] = Fraction(1)
    return v


def series(mu: LieBracket, kind: str = "lower_central") -> list:
    """Dimensions of the lower central or derived series down to stabilisation."""
    if kind not in ("lower_central", "derived"):
        raise ValueError(f"unknown series kind {kind!r}")
    n = mu.dim
    table = rational_table(mu)
    units = [_unit(n, i) for i in range(1, n + 1)]
    current = units
    dims = [n]
    while True:
        if kind == "lower_central":
            gens = [_rbracket(table, n, x, v) for x in units for v in current]
        else:
            gens = [_rbracket(table, n, u, v) for a, u in enumerate(current) for v in current[a + 1:]]
        basis, _ = linalg.echelon(gens, n) if gens else ([], [])
        d = len(basis)
        if d == dims[-1]:
            return dims
        dims.append(d)
        if d == 0:
            return dims
        current = [[Fraction(x) for x in b] for b in basis]


def is_nilpotent(mu: LieBracket) -> bool:
    return series(mu, "lower_central")[-1] == 0


def is_solvable(mu: LieBracket) -> bool:
    return series(mu, "derived")[-1] == 0


def nilpotency_class(mu: LieBracket):
    """Number of steps for the lower central series to reach 0, or None."""
    dims = series(mu, "lower_central")
    return len(dims) - 1 if dims[-1] == 0 else None


class LinearMap:
    """Square matrix acting on coefficient columns (column j = image of X_j)."""

    def __init__(self, matrix):
        self.matrix = [[as_rf(x) for x in row] for row in matrix]
        self.dim = len(self.matrix)
        if any(len(row) != self.dim for row in self.matrix):
            raise DimensionMismatch("linear map matrix must be square")

    @classmethod
    def zeros(cls, n: int) -> "LinearMap":
        return cls([[0] * n for _ in range(n)])

    @classmethod
    def identity(cls, n: int) -> "LinearMap":
        return cls([[1 if r == c else 0 for c in range(n)] for r in range(n)])

    @classmethod
    def diagonal_map(cls, values) -> "LinearMap":
        n = len(values)
        return cls([[values[r] if r == c else 0 for c in range(n)] for r in range(n)])

    def entry(self, i: int, j: int) -> RationalFunction:
        return self.matrix[i - 1][j - 1]

    def column(self, j: int) -> list:
        return [row[j - 1] for row in self.matrix]

    def apply(self, v) -> list:
        if len(v) != self.dim:
            raise DimensionMismatch(f"vector of length {len(v)} for map of dim {self.dim}")
        return [rsum(row[c] * v[c] for c in range(self.dim) if row[c] and v[c]) for row in self.matrix]

    def map_entries(self, fn) -> "LinearMap":
        return LinearMap([[fn(x) for x in row] for row in self.matrix])

    def substitute(self, bindings: dict) -> "LinearMap":
        return self.map_entries(lambda x: x.substitute(bindings))

    def __add__(self, other: "LinearMap") -> "LinearMap":
        return LinearMap([[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.matrix, other.matrix)])

    def scale(self, c) -> "LinearMap":
        c = as_rf(c)
        return self.map_entries(lambda x: x * c)

    def __matmul__(self, other: "LinearMap") -> "LinearMap":
        n = self.dim
        return LinearMap([
            [rsum(self.matrix[i][k] * other.matrix[k][j] for k in range(n)) for j in range(n)]
            for i in range(n)
        ])

    def diagonal(self) -> list:
        return [self.matrix[i][i] for i in range(self.dim)]

    def is_lower_triangular(self) -> bool:
        return all(not self.matrix[r][c] for r in range(self.dim) for c in range(r + 1, self.dim))

    def nonzero_entries(self) -> list:
        return [((r + 1, c + 1), x) for r, row in enumerate(self.matrix) for c, x in enumerate(row) if x]

    def __eq__(self, other):
        if not isinstance(other, LinearMap):
            return NotImplemented
        return all(a == b for r1, r2 in zip(self.matrix, other.matrix) for a, b in zip(r1, r2))

    __hash__ = None

    def __repr__(self):
        return f"LinearMap(dim={self.dim}, nnz={len(self.nonzero_entries())})"
