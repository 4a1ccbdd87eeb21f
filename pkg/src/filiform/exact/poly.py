"""Sparse multivariate polynomials over Q with dynamically named indeterminates.

A monomial is a tuple of ``(name, exponent)`` pairs sorted by name, with no
zero exponents; the constant monomial is ``()``.  Polynomials map monomials
to :class:`fractions.Fraction` coefficients and never store zeros, so two
polynomials are equal exactly when their term maps are equal.

Monomials are ordered lexicographically with variables ranked by name
(``a > b > ... > t``).  The leading term under this order drives exact
division.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm

Monomial = tuple  # tuple[tuple[str, int], ...]

ONE_MONO: Monomial = ()
_SENTINEL = (chr(0x10FFFF), 0)


def mono_mul(m1: Monomial, m2: Monomial) -> Monomial:
    if not m1:
        return m2
    if not m2:
        return m1
    out = []
    i = j = 0
    n1, n2 = len(m1), len(m2)
    while i < n1 and j < n2:
        a, b = m1[i], m2[j]
        if a[0] == b[0]:
            out.append((a[0], a[1] + b[1]))
            i += 1
            j += 1
        elif a[0] < b[0]:
            out.append(a)
            i += 1
        else:
            out.append(b)
            j += 1
    out.extend(m1[i:])
    out.extend(m2[j:])
    return tuple(out)


def mono_div(m1: Monomial, m2: Monomial):
    """Return ``m1 / m2`` or None when ``m2`` does not divide ``m1``."""
    if not m2:
        return m1
    d = dict(m1)
    for name, e in m2:
        have = d.get(name, 0)
        if have < e:
            return None
        if have == e:
            del d[name]
        else:
            d[name] = have - e
    return tuple(sorted(d.items()))


def mono_gcd(m1: Monomial, m2: Monomial) -> Monomial:
    d2 = dict(m2)
    return tuple((n, min(e, d2[n])) for n, e in m1 if n in d2)


def mono_key(m: Monomial):
    """Sort key: a *smaller* key means a *larger* monomial in lex order."""
    return tuple((n, -e) for n, e in m) + (_SENTINEL,)


def mono_degree(m: Monomial) -> int:
    return sum(e for _, e in m)


def _mono_str(m: Monomial) -> str:
    return "*".join(n if e == 1 else f"{n}^{e}" for n, e in m)


class Polynomial:
    """Immutable sparse polynomial with rational coefficients."""

    __slots__ = ("terms", "_lead", "_hash")

    def __init__(self, terms=None):
        if terms:
            self.terms = {m: Fraction(c) for m, c in terms.items() if c}
        else:
            self.terms = {}
        self._lead = None
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "Polynomial":
        # terms already pruned and Fraction-valued
        p = cls.__new__(cls)
        p.terms = terms
        p._lead = None
        p._hash = None
        return p

    @classmethod
    def constant(cls, c) -> "Polynomial":
        c = Fraction(c)
        return cls._raw({ONE_MONO: c} if c else {})

    @classmethod
    def var(cls, name: str, exp: int = 1) -> "Polynomial":
        if exp == 0:
            return cls.constant(1)
        return cls._raw({((name, exp),): Fraction(1)})

    # --- inspection -------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and ONE_MONO in self.terms)

    def constant_value(self) -> Fraction:
        return self.terms.get(ONE_MONO, Fraction(0))

    def variables(self) -> set:
        return {n for m in self.terms for n, _ in m}

    def degree(self, name: str | None = None) -> int:
        if not self.terms:
            return -1
        if name is None:
            return max(mono_degree(m) for m in self.terms)
        return max(dict(m).get(name, 0) for m in self.terms)

    def lead(self):
        """Leading ``(monomial, coefficient)`` under lex order."""
        if self._lead is None:
            if not self.terms:
                raise ValueError("zero polynomial has no leading term")
            m = min(self.terms, key=mono_key)
            self._lead = (m, self.terms[m])
        return self._lead

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda mc: mono_key(mc[0]))

    def key(self):
        """Hashable canonical key."""
        return tuple(self.sorted_terms())

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == Polynomial.constant(other).terms
        return NotImplemented

    def __bool__(self):
        return bool(self.terms)

    # --- arithmetic -------------------------------------------------------
    @staticmethod
    def _coerce(x) -> "Polynomial":
        if isinstance(x, Polynomial):
            return x
        if isinstance(x, (int, Fraction)):
            return Polynomial.constant(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to Polynomial")

    def __neg__(self):
        return Polynomial._raw({m: -c for m, c in self.terms.items()})

    def __add__(self, other):
        other = self._coerce(other)
        if not other.terms:
            return self
        if not self.terms:
            return other
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m)
            if v is None:
                out[m] = c
            else:
                v += c
                if v:
                    out[m] = v
                else:
                    del out[m]
        return Polynomial._raw(out)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, c) -> "Polynomial":
        c = Fraction(c)
        if not c:
            return Polynomial()
        if c == 1:
            return self
        return Polynomial._raw({m: v * c for m, v in self.terms.items()})

    def mul_term(self, mono: Monomial, c) -> "Polynomial":
        c = Fraction(c)
        if not c:
            return Polynomial()
        return Polynomial._raw({mono_mul(m, mono): v * c for m, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if not self.terms or not other.terms:
            return Polynomial()
        if len(other.terms) == 1:
            (m, c), = other.terms.items()
            return self.mul_term(m, c)
        if len(self.terms) == 1:
            (m, c), = self.terms.items()
            return other.mul_term(m, c)
        out: dict = {}
        get = out.get
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                out[m] = get(m, 0) + c1 * c2
        return Polynomial._raw({m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("polynomial exponent must be a nonnegative integer")
        result = Polynomial.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def divexact(self, other: "Polynomial"):
        """Quotient ``self / other`` if the division is exact, else None."""
        if not other.terms:
            raise ZeroDivisionError("polynomial division by zero")
        if not self.terms:
            return self
        lm, lc = other.lead()
        if len(other.terms) == 1:
            out = {}
            for m, c in self.terms.items():
                q = mono_div(m, lm)
                if q is None:
                    return None
                out[q] = c / lc
            return Polynomial._raw(out)
        rem = dict(self.terms)
        quot = {}
        rest = [(m, c) for m, c in other.terms.items() if m != lm]
        while rem:
            m = min(rem, key=mono_key)
            q = mono_div(m, lm)
            if q is None:
                return None
            c = rem.pop(m) / lc
            quot[q] = c
            for m2, c2 in rest:
                mm = mono_mul(m2, q)
                v = rem.get(mm, 0) - c * c2
                if v:
                    rem[mm] = v
                else:
                    rem.pop(mm, None)
        return Polynomial._raw(quot)

    # --- normalisation helpers ------------------------------------------
    def content(self) -> Fraction:
        """Positive rational ``c`` such that ``self / c`` has coprime integer coefficients."""
        if not self.terms:
            return Fraction(0)
        num = 0
        den = 1
        for c in self.terms.values():
            num = gcd(num, c.numerator)
            den = lcm(den, c.denominator)
        return Fraction(num, den)

    def monomial_content(self) -> Monomial:
        it = iter(self.terms)
        g = next(it)
        for m in it:
            if not g:
                break
            g = mono_gcd(g, m)
        return g

    def monic(self) -> "Polynomial":
        _, lc = self.lead()
        return self.scale(1 / lc)

    # --- evaluation ------------------------------------------------------
    def evaluate(self, point: dict) -> Fraction:
        """Evaluate at a rational point; every variable must be bound."""
        total = Fraction(0)
        for m, c in self.terms.items():
            v = c
            for n, e in m:
                v *= point[n] ** e
            total += v
        return total

    def partial_evaluate(self, point: dict) -> "Polynomial":
        """Substitute rational values for some variables."""
        out: dict = {}
        for m, c in self.terms.items():
            keep = []
            for n, e in m:
                if n in point:
                    c = c * Fraction(point[n]) ** e
                else:
                    keep.append((n, e))
            if c:
                k = tuple(keep)
                out[k] = out.get(k, 0) + c
        return Polynomial._raw({m: c for m, c in out.items() if c})

    def coefficients_in(self, name: str) -> dict:
        """Map ``k -> coefficient of name^k`` (a polynomial in the other variables)."""
        buckets: dict = {}
        for m, c in self.terms.items():
            k = 0
            rest = []
            for n, e in m:
                if n == name:
                    k = e
                else:
                    rest.append((n, e))
            buckets.setdefault(k, {})[tuple(rest)] = c
        return {k: Polynomial._raw(t) for k, t in buckets.items()}

    # --- rendering -------------------------------------------------------
    def render(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            if not m:
                s = _frac_str(abs(c))
            elif abs(c) == 1:
                s = _mono_str(m)
            else:
                s = f"{_frac_str(abs(c))}*{_mono_str(m)}"
            parts.append((c < 0, s))
        neg, s = parts[0]
        out = ("-" if neg else "") + s
        for neg, s in parts[1:]:
            out += (" - " if neg else " + ") + s
        return out

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"Polynomial({self.render()!r})"


def _frac_str(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"
