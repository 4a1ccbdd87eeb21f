"""Exact multivariate rational functions with factored denominators.

There is no multivariate GCD here.  A rational function is a numerator
polynomial over a product of monic denominator factors; any constant scale
lives in the numerator.  After every operation each denominator factor is
trial-divided into the numerator and cancelled while the division is exact.
This is enough for the parameter expressions this package handles, whose
denominators are products of simple explicit factors.

Equality is decided by cross-multiplication, so it does not depend on how a
denominator happens to be factored.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable

from .poly import Polynomial


class DivisionByZero(ZeroDivisionError):
    """Division by an identically zero rational function."""


class SubstitutionPole(ZeroDivisionError):
    """A substitution made some denominator factor vanish identically."""


def _factor_poly(p: Polynomial):
    """Split ``p`` as ``const * prod(factor^mult)`` with normalised factors.

    Monomial content becomes single-variable factors; the rest is made monic.
    """
    if p.is_zero():
        raise DivisionByZero("zero denominator")
    factors = []
    mc = p.monomial_content()
    if mc:
        p = p.divexact(Polynomial._raw({mc: Fraction(1)}))
        for name, e in mc:
            factors.append((Polynomial.var(name), e))
    if p.is_constant():
        return p.constant_value(), factors
    _, lc = p.lead()
    factors.append((p.scale(1 / lc), 1))
    return lc, factors


def _expand(den) -> Polynomial:
    out = Polynomial.constant(1)
    for f, m in den:
        out = out * f ** m
    return out


def _sort_den(d: dict):
    return tuple(sorted(((f, m) for f, m in d.items() if m), key=lambda fm: fm[0].key()))


def _cancel(num: Polynomial, den: dict) -> Polynomial:
    if num.is_zero():
        den.clear()
        return num
    for f in list(den):
        m = den[f]
        while m:
            q = num.divexact(f)
            if q is None:
                break
            num = q
            m -= 1
        den[f] = m
    if not num.is_constant() and len(den) == 1:
        # numerator may itself divide the lone factor, e.g. (a-1)/(a^2-1)
        (f, m), = den.items()
        if m == 1 and len(num.terms) <= len(f.terms):
            h = f.divexact(num)
            if h is not None:
                del den[f]
                if not h.is_constant():
                    hc = h.lead()[1]
                    den[h.scale(1 / hc)] = 1
                    return Polynomial.constant(1 / hc)
                return Polynomial.constant(1 / h.constant_value())
    return num


def _add_factors(den: dict, factors):
    """Merge factors into ``den``, splitting new ones by known factors."""
    for f, m in factors:
        if f in den:
            den[f] += m
            continue
        rest = f
        for g in list(den):
            if rest.is_constant():
                break
            if len(g.terms) > len(rest.terms):
                continue
            while not rest.is_constant():
                q = rest.divexact(g)
                if q is None:
                    break
                den[g] += m
                rest = q
        if not rest.is_constant():
            _, lc = rest.lead()
            if lc != 1:
                rest = rest.scale(1 / lc)
            den[rest] = den.get(rest, 0) + m


class RationalFunction:
    """Immutable exact rational function ``num / prod(factor^mult)``."""

    __slots__ = ("num", "den")

    def __init__(self, num=0, den=()):
        if not isinstance(num, Polynomial):
            num = Polynomial.constant(num)
        self.num = num
        self.den = tuple(den)

    @classmethod
    def _make(cls, num: Polynomial, den: dict) -> "RationalFunction":
        num = _cancel(num, den)
        return cls(num, _sort_den(den))

    @classmethod
    def from_polys(cls, num: Polynomial, den: Polynomial) -> "RationalFunction":
        c, factors = _factor_poly(den)
        d: dict = {}
        _add_factors(d, factors)
        return cls._make(num.scale(1 / c), d)

    @classmethod
    def var(cls, name: str) -> "RationalFunction":
        return cls(Polynomial.var(name))

    @classmethod
    def const(cls, c) -> "RationalFunction":
        return cls(Polynomial.constant(c))

    @staticmethod
    def coerce(x) -> "RationalFunction":
        if isinstance(x, RationalFunction):
            return x
        if isinstance(x, (int, Fraction)):
            return RationalFunction(Polynomial.constant(x))
        if isinstance(x, Polynomial):
            return RationalFunction(x)
        if isinstance(x, str):
            from .parse import parse_expr

            return parse_expr(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to RationalFunction")

    # --- predicates -------------------------------------------------------
    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return not self.den

    def is_constant(self) -> bool:
        return not self.den and self.num.is_constant()

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.num.constant_value()

    def variables(self) -> set:
        out = set(self.num.variables())
        for f, _ in self.den:
            out |= f.variables()
        return out

    def den_poly(self) -> Polynomial:
        return _expand(self.den)

    def __bool__(self):
        return not self.num.is_zero()

    # --- arithmetic -------------------------------------------------------
    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __add__(self, other):
        try:
            other = RationalFunction.coerce(other)
        except TypeError:
            return NotImplemented
        if other.num.is_zero():
            return self
        if self.num.is_zero():
            return other
        if self.den == other.den:
            return RationalFunction._make(self.num + other.num, dict(self.den))
        da, db = dict(self.den), dict(other.den)
        common = dict(da)
        for f, m in db.items():
            if common.get(f, 0) < m:
                common[f] = m
        na = self.num
        for f, m in common.items():
            k = m - da.get(f, 0)
            if k:
                na = na * f ** k
        nb = other.num
        for f, m in common.items():
            k = m - db.get(f, 0)
            if k:
                nb = nb * f ** k
        return RationalFunction._make(na + nb, common)

    __radd__ = __add__

    def __sub__(self, other):
        try:
            other = RationalFunction.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return RationalFunction.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return RationalFunction()
            if not self.den:
                return RationalFunction(self.num.scale(other))
            return RationalFunction(self.num.scale(other), self.den)
        try:
            other = RationalFunction.coerce(other)
        except TypeError:
            return NotImplemented
        if self.num.is_zero() or other.num.is_zero():
            return RationalFunction()
        if not self.den and not other.den:
            return RationalFunction(self.num * other.num)
        da, db = dict(self.den), dict(other.den)
        na = _cancel(self.num, db) if db else self.num
        nb = _cancel(other.num, da) if da else other.num
        den = {f: m for f, m in da.items() if m}
        _add_factors(den, [(f, m) for f, m in db.items() if m])
        return RationalFunction._make(na * nb, den)

    __rmul__ = __mul__

    def inverse(self) -> "RationalFunction":
        if self.num.is_zero():
            raise DivisionByZero("division by zero rational function")
        c, factors = _factor_poly(self.num)
        d: dict = {}
        _add_factors(d, factors)
        return RationalFunction._make(_expand(self.den).scale(1 / c), d)

    def __truediv__(self, other):
        try:
            other = RationalFunction.coerce(other)
        except TypeError:
            return NotImplemented
        if other.num.is_zero():
            raise DivisionByZero("division by zero rational function")
        if other.is_constant():
            return self * (1 / other.constant_value())
        return self * other.inverse()

    def __rtruediv__(self, other):
        return RationalFunction.coerce(other) / self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            raise ValueError("exponent must be an integer")
        if n < 0:
            return self.inverse() ** (-n)
        num = self.num ** n
        return RationalFunction(num, tuple((f, m * n) for f, m in self.den))

    # --- comparison ---------------------------------------------------------
    def __eq__(self, other):
        try:
            other = RationalFunction.coerce(other)
        except TypeError:
            return NotImplemented
        if self.den == other.den:
            return self.num == other.num
        return self.num * _expand(other.den) == other.num * _expand(self.den)

    __hash__ = None

    # --- substitution -------------------------------------------------------
    def substitute(self, bindings: dict) -> "RationalFunction":
        """Simultaneous substitution ``name -> value`` (values coerced)."""
        if not bindings:
            return self
        b = {k: RationalFunction.coerce(v) for k, v in bindings.items()}
        num = _poly_subst(self.num, b)
        if not self.den:
            return num
        den = RationalFunction.const(1)
        for f, m in self.den:
            v = _poly_subst(f, b)
            if v.is_zero():
                raise SubstitutionPole(f"denominator factor {f.render()} vanishes under {_fmt(bindings)}")
            den = den * v ** m
        return num / den

    def evaluate(self, point: dict) -> Fraction:
        """Exact value at a rational point binding every variable."""
        point = {k: Fraction(v) for k, v in point.items()}
        d = Fraction(1)
        for f, m in self.den:
            v = f.evaluate(point)
            if not v:
                raise SubstitutionPole(f"denominator factor {f.render()} vanishes at {_fmt(point)}")
            d *= v ** m
        return self.num.evaluate(point) / d

    def partial_evaluate(self, point: dict) -> "RationalFunction":
        point = {k: Fraction(v) for k, v in point.items()}
        num = self.num.partial_evaluate(point)
        if not self.den:
            return RationalFunction(num)
        den = Polynomial.constant(1)
        for f, m in self.den:
            v = f.partial_evaluate(point)
            if v.is_zero():
                raise SubstitutionPole(f"denominator factor {f.render()} vanishes at {_fmt(point)}")
            den = den * v ** m
        return RationalFunction.from_polys(num, den)

    def coefficients_in(self, name: str) -> dict:
        """Split by powers of ``name``; the denominator must not involve it."""
        if any(name in f.variables() for f, _ in self.den):
            raise ValueError(f"denominator of {self} involves {name}")
        return {k: RationalFunction._make(c, dict(self.den)) for k, c in self.num.coefficients_in(name).items()}

    # --- rendering ------------------------------------------------------------
    def render(self) -> str:
        num = self.num.render()
        if not self.den:
            return num
        parts = []
        for f, m in self.den:
            s = f.render()
            if len(f.terms) > 1:
                s = f"({s})"
            parts.append(s if m == 1 else f"{s}^{m}")
        den = "*".join(parts)
        if len(self.num.terms) > 1 or "/" in num:
            num = f"({num})"
        if len(parts) > 1:
            den = f"({den})"
        return f"{num}/{den}"

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"RationalFunction({self.render()!r})"


def _fmt(b: dict) -> str:
    return "{" + ", ".join(f"{k}={v}" for k, v in sorted(b.items())) + "}"


def _poly_subst(p: Polynomial, b: dict) -> RationalFunction:
    names = p.variables() & b.keys()
    if not names:
        return RationalFunction(p)
    if all(not b[n].den for n in names):
        # polynomial bindings: stay in the polynomial ring
        powers: dict = {}
        out = Polynomial()
        for m, c in p.terms.items():
            term = Polynomial._raw({(): c})
            keep = []
            for n, e in m:
                if n in b:
                    key = (n, e)
                    if key not in powers:
                        powers[key] = b[n].num ** e
                    term = term * powers[key]
                else:
                    keep.append((n, e))
            if keep:
                term = term.mul_term(tuple(keep), 1)
            out = out + term
        return RationalFunction(out)
    powers = {}
    terms = []
    for m, c in p.terms.items():
        term = RationalFunction.const(c)
        keep = []
        for n, e in m:
            if n in b:
                key = (n, e)
                if key not in powers:
                    powers[key] = b[n] ** e
                term = term * powers[key]
            else:
                keep.append((n, e))
        if keep:
            term = term * RationalFunction(Polynomial._raw({tuple(keep): Fraction(1)}))
        terms.append(term)
    return rsum(terms)


def rsum(items: Iterable) -> RationalFunction:
    """Sum many rational functions, adding numerators over shared denominators first."""
    groups: dict = {}
    for x in items:
        x = RationalFunction.coerce(x)
        if x.num.is_zero():
            continue
        acc = groups.get(x.den)
        groups[x.den] = x.num if acc is None else acc + x.num
    total = RationalFunction()
    for den, num in groups.items():
        total = total + RationalFunction._make(num, dict(den))
    return total


def as_rf(x) -> RationalFunction:
    return RationalFunction.coerce(x)


ZERO = RationalFunction()
ONE = RationalFunction.const(1)

__all__ = [
    "DivisionByZero",
    "SubstitutionPole",
    "RationalFunction",
    "rsum",
    "as_rf",
    "ZERO",
    "ONE",
]
