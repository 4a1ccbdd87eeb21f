"""Derivations: residuals, exact derivation spaces, characteristic nilpotency."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from . import linalg
from .exact import RationalFunction, rsum
from .lie import DimensionMismatch, LieBracket, LinearMap, rational_table

H1 = (1, 3, 4, 5, 6, 7, 8, 9)
H2 = (2, 3, 4, 5, 6, 7, 8, 9)


@dataclass(frozen=True)
class IdealSpec:
    basis_indices: tuple
    name: str = ""

    def __len__(self):
        return len(self.basis_indices)


IDEAL_H1 = IdealSpec(H1, "h1")
IDEAL_H2 = IdealSpec(H2, "h2")


@dataclass
class DerivationSpec:
    ideal: IdealSpec
    matrix: LinearMap

    def __post_init__(self):
        if self.matrix.dim != len(self.ideal):
            raise DimensionMismatch(f"{self.matrix.dim}x{self.matrix.dim} matrix on an ideal of dimension {len(self.ideal)}")


def ideal_check(mu: LieBracket, h: IdealSpec) -> list:
    """``(i, j, l)`` triples with ``X_j`` in ``h`` and ``[X_i, X_j]`` leaving ``h`` along ``X_l``."""
    inside = set(h.basis_indices)
    out = set()
    for i in range(1, mu.dim + 1):
        for j in h.basis_indices:
            for l, c in mu.bracket(i, j).items():
                if l not in inside and c:
                    out.add((min(i, j), max(i, j), l))
    return sorted(out)


def _matrix_of(D) -> LinearMap:
    return D.matrix if isinstance(D, DerivationSpec) else D


def derivation_residual(mu_h: LieBracket, D) -> list:
    """Nonzero coefficients of ``D[x,y] - [Dx,y] - [x,Dy]`` on basis pairs."""
    D = _matrix_of(D)
    m = mu_h.dim
    if D.dim != m:
        raise DimensionMismatch(f"derivation of dim {D.dim} on a bracket of dim {m}")
    cols = [{r + 1: x for r, x in enumerate(D.column(c)) if x} for c in range(1, m + 1)]
    out = []
    for a, b in combinations(range(1, m + 1), 2):
        acc: dict = {}
        for l, c in mu_h.bracket(a, b).items():
            for r, x in cols[l - 1].items():
                acc.setdefault(r, []).append(c * x)
        for s, x in cols[a - 1].items():
            for l, c in mu_h.bracket(s, b).items():
                acc.setdefault(l, []).append(-(x * c))
        for s, x in cols[b - 1].items():
            for l, c in mu_h.bracket(a, s).items():
                acc.setdefault(l, []).append(-(x * c))
        for l in sorted(acc):
            v = rsum(acc[l])
            if v:
                out.append(((a, b, l), v))
    return out


def verify_diag_derivation(entry, catalog=None) -> bool:
    """True iff ``diag(weights)`` is a derivation of the whole algebra."""
    from .catalog import derive_constants
    if isinstance(entry, str):
        if catalog is None:
            from .catalog import load_catalog
            catalog = load_catalog()
        entry = catalog.diag_entry(entry)
    mu = derive_constants(entry.row)
    return not derivation_residual(mu, LinearMap.diagonal_map(entry.weights))


def h1_template(k, d1, constants: dict) -> LinearMap:
    """The banded derivation candidate on ``X_1, X_3, ..., X_9``.

    ``constants`` must provide ``C5_23 .. C9_23``.  Position 1 is ``X_1`` and
    position ``p >= 2`` is ``X_{p+1}``.
    """
    d1 = RationalFunction.coerce(d1)
    m = [[RationalFunction() for _ in range(8)] for _ in range(8)]
    m[0][0] = d1
    for p in range(2, 9):
        m[p - 1][p - 1] = d1 * (k + p - 2)
    for c in range(2, 9):
        for r in range(c + 2, 9):
            m[r - 1][c - 1] = -constants[f"C{r - c + 3}_23"]
    return LinearMap(m)


# --- exact derivation spaces at rational points ------------------------------

def derivation_space(mu: LieBracket) -> list:
    """Basis of Der(mu) as ``n x n`` lists of Fractions (``mu`` parameter-free)."""
    n = mu.dim
    table = rational_table(mu)

    def br(i, j):
        if i == j:
            return ()
        if i < j:
            return table.get((i, j), ())
        return [(l, -c) for l, c in table.get((j, i), ())]

    def var(r, c):
        return (r - 1) * n + (c - 1)

    rows = []
    for i, j in combinations(range(1, n + 1), 2):
        eq: dict = {}
        # D[X_i, X_j]
        for m, c in br(i, j):
            for l in range(1, n + 1):
                eq.setdefault(l, {}).setdefault(var(l, m), 0)
                eq[l][var(l, m)] += c
        # [D X_i, X_j] + [X_i, D X_j]
        for m in range(1, n + 1):
            for l, c in br(m, j):
                eq.setdefault(l, {}).setdefault(var(m, i), 0)
                eq[l][var(m, i)] -= c
            for l, c in br(i, m):
                eq.setdefault(l, {}).setdefault(var(m, j), 0)
                eq[l][var(m, j)] -= c
        for coeffs in eq.values():
            if any(coeffs.values()):
                row = [Fraction(0)] * (n * n)
                for v, c in coeffs.items():
                    row[v] = Fraction(c)
                rows.append(row)
    vecs = linalg.nullspace(rows, n * n)
    return [[v[r * n:(r + 1) * n] for r in range(n)] for v in vecs]


def _flat(m):
    return [x for row in m for x in row]


def _unflat(v, n):
    return [list(v[r * n:(r + 1) * n]) for r in range(n)]


def _integral(basis):
    """Scale each matrix to integers; spans are unchanged."""
    if not basis:
        return []
    n = len(basis[0])
    return [_unflat(linalg.to_integer_row(_flat(b)), n) for b in basis]


def _mul(a, b):
    n = len(a)
    out = [[0] * n for _ in range(n)]
    for i, row in enumerate(a):
        acc = out[i]
        for k, x in enumerate(row):
            if x:
                for j, y in enumerate(b[k]):
                    if y:
                        acc[j] += x * y
    return out


def _commutator(a, b):
    return [[x - y for x, y in zip(r1, r2)] for r1, r2 in zip(_mul(a, b), _mul(b, a))]


def lie_series_of_matrices(basis: list) -> list:
    """Lower central series dimensions of the matrix Lie algebra spanned by ``basis``."""
    if not basis:
        return [0]
    n = len(basis[0])
    basis = _integral(basis)
    current = basis
    dims = [len(linalg.echelon([_flat(b) for b in basis], n * n)[0])]
    while dims[-1]:
        gens = [_flat(_commutator(a, m)) for a in basis for m in current]
        ech, _ = linalg.echelon(gens, n * n)
        if len(ech) == dims[-1]:
            break
        dims.append(len(ech))
        current = [_unflat(v, n) for v in ech]
    return dims


def is_nil_space(basis: list) -> bool:
    """True iff every matrix in the (Lie-closed) span of ``basis`` is nilpotent.

    Checks that all products of ``n`` elements vanish, which by Engel's
    theorem is equivalent for a Lie algebra of matrices.
    """
    if not basis:
        return True
    n = len(basis[0])
    basis = _integral(basis)
    current = basis
    for _ in range(n):
        gens = [_flat(_mul(a, m)) for a in basis for m in current]
        ech, _ = linalg.echelon(gens, n * n)
        if not ech:
            return True
        current = [_unflat(v, n) for v in ech]
    return False


def is_char_nilpotent(mu: LieBracket) -> bool:
    """True iff Der(mu) is a nilpotent Lie algebra."""
    return lie_series_of_matrices(derivation_space(mu))[-1] == 0


def derivations_all_nilpotent(mu: LieBracket) -> bool:
    """True iff every derivation of ``mu`` is a nilpotent map."""
    return is_nil_space(derivation_space(mu))
