"""Conjugating families ``g_t`` and the degeneration identity.

Two constructions are covered.  On ``h1`` the family is assembled from five
fixed matrices ``T_0..T_4`` and a short list of coefficients ``p_{r,2}``; the
relation between ``t`` and the auxiliary ``p0`` is one of ``t = p0``,
``t = p0^2`` or ``t = p0^3``, and every identity is checked in ``p0``.  On
``h2`` the family is lower triangular with diagonal ``t, t^{d_11}, ...,
t^{d_88}`` and the entries below the diagonal come either from a recurrence
or from its closed-form solution, a double sum over decreasing sequences.

Indices of ``D`` on ``h2`` are positions ``1..8`` in ``X_2..X_9``, so
``d_{i,j}`` is the coefficient of ``X_{i+1}`` in ``D X_{j+1}``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .catalog import Catalog, derive_constants, named_constants
from .deform import DeformationSpec, build_mu_D
from .deriv import IDEAL_H1, IDEAL_H2, h1_template
from .exact import RationalFunction, as_rf, parse_expr, rsum
from .lie import LieBracket, LinearMap, basis_vector, bracket_apply

T = RationalFunction.var("t")
P0 = RationalFunction.var("p0")
ZERO = RationalFunction()
SUBST_POWER = {"p0=t": 1, "p0^2=t": 2, "p0^3=t": 3}
P_SLOTS = ((4, 2), (5, 2), (6, 2), (7, 2), (8, 2), (9, 2))
OUTSIDE = {"X2": 1, "-X2": -1}


class RepeatedDiagonal(ValueError):
    pass


@dataclass
class H1CaseData:
    case_id: str
    algebra: str
    substitution: str
    constants: dict
    k: int | None = None
    d1: RationalFunction | None = None
    p_coeffs: dict = field(default_factory=dict)
    special: dict | None = None
    bindings: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)
    outside_coeff: int = 1

    @property
    def t_expr(self) -> RationalFunction:
        return P0 ** SUBST_POWER[self.substitution]

    def p(self, r: int, s: int = 2) -> RationalFunction:
        return self.p_coeffs.get((r, s), ZERO)


@dataclass
class H2CaseData:
    case_id: str
    algebra: str
    D: LinearMap
    bindings: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)

    def __post_init__(self):
        diag = self.D.diagonal()
        for i, j in combinations(range(8), 2):
            if diag[i] == diag[j]:
                raise RepeatedDiagonal(f"d_{i + 1}{i + 1} = d_{j + 1}{j + 1} = {diag[i]}")


# --- case data from the catalog ----------------------------------------------

def _key(k: str):
    return int(k[0]), int(k[1:])


def h1_case(catalog: Catalog, case_id: str, algebra: str, variant: str | None = None) -> H1CaseData:
    """Case data with constants of ``algebra`` substituted and ``t`` eliminated.

    Coefficients the source leaves out are 0; coefficients it prints in an
    unusable form become free symbols ``p<r><s>``.
    """
    raw = catalog.case(case_id)
    bindings = {k: parse_expr(v) for k, v in raw.get("bindings", {}).get(algebra, {}).items()}
    row = catalog.row(algebra)
    consts = {n: c.substitute(bindings) if bindings else c for n, c in named_constants(row).items()}
    ren = {}
    if variant is not None:
        ren = {k: parse_expr(v) for k, v in raw["variants"][variant].items()}
    t_expr = P0 ** SUBST_POWER[raw["subst"]]

    def resolve(f: RationalFunction) -> RationalFunction:
        if ren:
            f = f.substitute(ren)
        binds = {n: consts[n] for n in f.variables() if n in consts}
        if "t" in f.variables():
            binds["t"] = t_expr
        return f.substitute(binds) if binds else f

    p = {_key(k): resolve(v) for k, v in raw.get("p", {}).items()}
    for k in raw.get("unresolved", {}):
        p[_key(k)] = RationalFunction.var(f"p{k}")
    notes = list(raw.get("notes", []))
    sign = OUTSIDE[raw.get("outside", "X2")]
    if "D" in raw:
        special = {"D": LinearMap(raw["D"]).substitute(bindings) if bindings else LinearMap(raw["D"])}
        if "g" in raw:
            pnames = {f"p{k}": v for k, v in raw.get("p", {}).items()}
            g = LinearMap(raw["g"]).map_entries(
                lambda x: resolve(x.substitute({n: pnames[n] for n in x.variables() if n in pnames})))
            special["g"] = g
        return H1CaseData(case_id, algebra, raw["subst"], consts, special=special,
                          p_coeffs=p, bindings=bindings, notes=notes, outside_coeff=sign)
    return H1CaseData(case_id, algebra, raw["subst"], consts, k=raw["k"], d1=resolve(raw["d1"]),
                      p_coeffs=p, bindings=bindings, notes=notes, outside_coeff=sign)


def h2_case(catalog: Catalog, case_id: str, algebra: str, overrides: dict | None = None) -> H2CaseData:
    """``overrides`` maps ``(i, j)`` to a replacement expression for ``d_{i,j}``."""
    raw = catalog.case(case_id)
    D = [row[:] for row in raw["D"]]
    for (i, j), v in (overrides or {}).items():
        D[i - 1][j - 1] = as_rf(v)
    return H2CaseData(case_id, algebra, LinearMap(D), notes=list(raw.get("notes", [])))


def case_algebra(catalog: Catalog, case, algebra: str) -> LieBracket:
    mu = derive_constants(catalog.row(algebra))
    return mu.substitute(case.bindings) if case.bindings else mu


def h1_derivation(case: H1CaseData) -> LinearMap:
    if case.special is not None:
        return case.special["D"]
    D = h1_template(case.k, case.d1, case.constants)
    return D.substitute(case.bindings) if case.bindings else D


def deformation_spec(mu: LieBracket, case) -> DeformationSpec:
    if isinstance(case, H2CaseData):
        return DeformationSpec(mu, IDEAL_H2, 1, case.D, 1)
    return DeformationSpec(mu, IDEAL_H1, 2, h1_derivation(case), case.outside_coeff)


# --- h1: the T matrices --------------------------------------------------------

def _matrix(entries: dict) -> LinearMap:
    m = [[ZERO] * 9 for _ in range(9)]
    for (r, c), x in entries.items():
        m[r - 1][c - 1] = as_rf(x)
    return LinearMap(m)


def assemble_T_matrices(case: H1CaseData, constants: dict | None = None) -> tuple:
    C = case.constants if constants is None else constants
    k, t, p = case.k, case.t_expr, case.p
    t0 = {(1, 1): P0, (2, 2): t}
    for i in range(3, 10):
        t0[(i, i)] = P0 ** (k + i - 3)
    for r in range(4, 10):
        t0[(r, 2)] = p(r)
    for c in range(3, 8):
        for r in range(c + 2, 10):
            t0[(r, c)] = P0 ** (c - 2) * p(r - c + 2)
    # printed with powers of t in place of powers of p0
    t0[(7, 5)] = t ** 2 * P0 * p(4)
    t0[(8, 6)] = t ** 3 * P0 * p(4)
    t0[(9, 7)] = t ** 3 * P0 ** 2 * p(4)
    c734, c834, c934 = C["C7_34"], C["C8_34"], C["C9_34"]
    c835, c935, c936 = C["C8_35"], C["C9_35"], C["C9_36"]
    t1 = {(7, 3): c734, (8, 3): c834, (8, 4): (c734 + c835) * P0, (9, 3): c934,
          (9, 4): (c834 + c935) * P0, (9, 5): (c734 + c835 + c936) * P0 ** 2}
    t2 = {(8, 3): c835, (9, 3): c935, (9, 4): (c835 + c936) * P0}
    t3 = {(9, 3): c936}
    t4 = {(3, 1): P0 ** (-(k + 1)), (7, 5): c734, (8, 5): c834, (8, 6): (c734 + c835) * P0,
          (9, 5): c934, (9, 6): (c834 + c935) * P0, (9, 7): (c734 + c835 + c936) * P0 ** 2}
    return tuple(_matrix(e) for e in (t0, t1, t2, t3, t4))


def assemble_g_h1(case: H1CaseData) -> LinearMap:
    if case.special is not None and "g" in case.special:
        return case.special["g"]
    T0, T1, T2, T3, T4 = assemble_T_matrices(case)
    k = case.k
    factor = (case.t_expr - P0 ** (k - 1)) / (k - 1)
    inner = T1.scale(case.p(4)) + T2.scale(case.p(5)) + T3.scale(case.p(6)) + T4.scale(P0 ** (k + 1))
    return T0 + inner.scale(factor)


# --- h2: recurrence and closed form --------------------------------------------

def _d(D: LinearMap, i: int, j: int) -> RationalFunction:
    return D.entry(i, j)


def Y(i: int, j: int, D: LinearMap) -> RationalFunction:
    diff = _d(D, i - 1, i - 1) - _d(D, j - 1, j - 1)
    if not diff:
        raise RepeatedDiagonal(f"Y({i},{j}): d_{i - 1}{i - 1} = d_{j - 1}{j - 1}")
    return (T * diff).inverse()


def f_z(x: int, y: int, z: int, D: LinearMap) -> RationalFunction:
    if x <= y:
        raise ValueError(f"f_z needs x > y, got ({x}, {y})")
    d = _d(D, x - 1, y - 1)
    if x - y > 1:
        return T * d
    if z <= y:
        return T * (d + 1)
    return T * d + 1


def default_diag(D: LinearMap) -> list:
    """``[t, t^{d_11}, ..., t^{d_88}]``; needs integer diagonal entries."""
    out = [T]
    for i in range(1, 9):
        d = _d(D, i, i)
        if not d.is_constant() or d.constant_value().denominator != 1:
            raise ValueError(f"d_{i}{i} = {d} is not an integer; pass the diagonal of g explicitly")
        out.append(T ** int(d.constant_value()))
    return out


def enumerate_I(r: int, s: int, k: int) -> list:
    if r <= s or k < 2 or k > r - s + 1:
        return []
    return [(r,) + mid + (s,) for mid in combinations(range(r - 1, s, -1), k - 2)]


def recurrence_table(D: LinearMap, diag: list | None = None) -> dict:
    """All ``p_{r,s}``, ``9 >= r > s >= 2``, by increasing ``r - s``."""
    diag = default_diag(D) if diag is None else [as_rf(x) for x in diag]
    memo: dict = {}

    def P(i, j):
        return diag[i - 1] if i == j else memo[(i, j)]

    for gap in range(1, 8):
        for s in range(2, 10 - gap):
            r = s + gap
            terms = [T * _d(D, r - 1, s - 1) * (P(r, r) - P(s, s)), P(r, s + 1), -(T * P(r - 1, s))]
            for i in range(s + 1, r):
                terms.append(T * (_d(D, i - 1, s - 1) * P(r, i) - _d(D, r - 1, i - 1) * P(i, s)))
            memo[(r, s)] = rsum(terms) * Y(r, s, D)
    return memo


def p_rs_recurrence(r: int, s: int, D: LinearMap, diag: list | None = None) -> RationalFunction:
    return recurrence_table(D, diag)[(r, s)]


def _F(a: tuple, i: int, D: LinearMap, diag: list) -> RationalFunction:
    k = len(a)
    ai = a[i]
    out = diag[ai - 1]
    for j in range(k - 1):
        out = out * f_z(a[j], a[j + 1], ai, D)
        out = out * Y(ai, a[k - 1] if j == i else a[j], D)
    return out


def p_rs_closed_form(r: int, s: int, D: LinearMap, diag: list | None = None) -> RationalFunction:
    diag = default_diag(D) if diag is None else [as_rf(x) for x in diag]
    terms = []
    for k in range(2, r - s + 2):
        for a in enumerate_I(r, s, k):
            terms.extend(_F(a, i, D, diag) for i in range(k))
    return rsum(terms)


def closed_form_table(D: LinearMap, diag: list | None = None) -> dict:
    diag = default_diag(D) if diag is None else [as_rf(x) for x in diag]
    return {(r, s): p_rs_closed_form(r, s, D, diag) for r in range(3, 10) for s in range(2, r)}


def assemble_g_h2(case, diag: list | None = None, table: dict | None = None) -> LinearMap:
    D = case.D if isinstance(case, H2CaseData) else case
    diag = default_diag(D) if diag is None else [as_rf(x) for x in diag]
    table = closed_form_table(D, diag) if table is None else table
    entries = {(i, i): diag[i - 1] for i in range(1, 10)}
    entries.update(table)
    return _matrix(entries)


def q1rs(r: int, s: int, D: LinearMap, p: dict, diag: list) -> RationalFunction:
    """The ``X_r`` coefficient formula for the pair ``(X_1, X_s)``."""

    def P(i, j):
        return diag[i - 1] if i == j else p[(i, j)]

    terms = [-(T * (_d(D, r - 1, r - 1) - _d(D, s - 1, s - 1)) * P(r, s)),
             T * _d(D, r - 1, s - 1) * (P(r, r) - P(s, s)),
             P(r, s + 1), -(T * P(r - 1, s))]
    for i in range(s + 1, r):
        terms.append(T * (_d(D, i - 1, s - 1) * P(r, i) - _d(D, r - 1, i - 1) * P(i, s)))
    return rsum(terms)


def q1rs_consistency(case, p: dict | None = None, diag: list | None = None) -> bool:
    D = case.D if isinstance(case, H2CaseData) else case
    diag = default_diag(D) if diag is None else [as_rf(x) for x in diag]
    p = closed_form_table(D, diag) if p is None else p
    return all(not q1rs(r, s, D, p, diag) for r in range(3, 10) for s in range(2, r))


# --- the degeneration identity -------------------------------------------------

def degeneration_residual(mu: LieBracket, spec: DeformationSpec, g: LinearMap, t=None) -> list:
    """Nonzero ``q(i,j,l)`` in ``mu_1(g X_i, g X_j) - g mu_t(X_i, X_j)``."""
    t = T if t is None else as_rf(t)
    mu_D = build_mu_D(spec, check=False)
    mu1 = mu + mu_D
    mut = mu + mu_D.scale(t)
    n = mu.dim
    cols = [g.column(j) for j in range(1, n + 1)]
    out = []
    for i, j in combinations(range(1, n + 1), 2):
        lhs = bracket_apply(mu1, cols[i - 1], cols[j - 1])
        v = [ZERO] * n
        for l, c in mut.bracket(i, j).items():
            v[l - 1] = c
        rhs = g.apply(v)
        for l in range(1, n + 1):
            q = lhs[l - 1] - rhs[l - 1]
            if q:
                out.append(((i, j, l), q))
    return out


def structural_violations(residuals: list) -> list:
    """Residual entries at positions that must vanish: ``i+j > 9`` or ``l < i+j``."""
    return [(k, v) for k, v in residuals if k[0] + k[1] > 9 or k[2] < k[0] + k[1]]


def conjugate_bracket(mu: LieBracket, g: LinearMap, ginv: LinearMap) -> LieBracket:
    """``g^{-1} . mu``: the bracket ``(x, y) -> g^{-1} mu(g x, g y)``."""
    n = mu.dim
    cols = [g.column(j) for j in range(1, n + 1)]
    out = LieBracket(n)
    for i, j in combinations(range(1, n + 1), 2):
        v = ginv.apply(bracket_apply(mu, cols[i - 1], cols[j - 1]))
        for l, c in enumerate(v, 1):
            if c:
                out.add(i, j, l, c)
    return out


def lower_triangular_inverse(g: LinearMap) -> LinearMap:
    n = g.dim
    if not g.is_lower_triangular():
        raise ValueError("matrix is not lower triangular")
    inv = [[ZERO] * n for _ in range(n)]
    for c in range(n):
        inv[c][c] = g.matrix[c][c].inverse()
        for r in range(c + 1, n):
            acc = rsum(g.matrix[r][m] * inv[m][c] for m in range(c, r) if g.matrix[r][m] and inv[m][c])
            inv[r][c] = -(acc / g.matrix[r][r]) if acc else ZERO
    return LinearMap(inv)


def single_symbol(residuals: list, name: str) -> RationalFunction | None:
    """The value of ``name`` that zeroes every residual, when they are affine in it."""
    value = None
    for _, v in residuals:
        co = v.coefficients_in(name)
        if set(co) - {0, 1} or 1 not in co:
            return None
        x = -co.get(0, ZERO) / co[1]
        if value is None:
            value = x
        elif value != x:
            return None
    return value
