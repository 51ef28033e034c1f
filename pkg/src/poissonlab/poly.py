"""Exact sparse multivariate polynomials and rational functions over Q.

A polynomial in ``n`` variables is a map from exponent tuples (length ``n``,
non-negative ints) to nonzero Fraction coefficients; the zero polynomial has
an empty term map.  All arithmetic is exact.

Rational functions are stored unreduced (no multivariate gcd): equality of
a/b and c/d is decided by cross-multiplication, a*d - c*b == 0.  A light
normalization (common monomial factor and rational content of the
denominator) keeps expression sizes tame without a gcd algorithm.
"""

from __future__ import annotations

import math
from fractions import Fraction

DEFAULT_NAMES = ("x", "y", "z", "u", "v", "w")


def _as_fraction(c):
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c)
    raise TypeError(f"cannot interpret {c!r} as an exact rational")


class Polynomial:
    """Sparse polynomial with Fraction coefficients in a fixed number of variables."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars, terms=None):
        self.nvars = nvars
        clean = {}
        if terms:
            for exps, coeff in terms.items():
                coeff = _as_fraction(coeff)
                if coeff == 0:
                    continue
                exps = tuple(exps)
                if len(exps) != nvars or any(e < 0 for e in exps):
                    raise ValueError(f"bad exponent vector {exps} for {nvars} variables")
                clean[exps] = clean.get(exps, Fraction(0)) + coeff
                if clean[exps] == 0:
                    del clean[exps]
        self.terms = clean

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, nvars):
        return cls(nvars)

    @classmethod
    def constant(cls, value, nvars):
        return cls(nvars, {(0,) * nvars: _as_fraction(value)})

    @classmethod
    def variable(cls, index, nvars):
        exps = [0] * nvars
        exps[index] = 1
        return cls(nvars, {tuple(exps): Fraction(1)})

    @classmethod
    def monomial(cls, exps, coeff=1):
        return cls(len(exps), {tuple(exps): _as_fraction(coeff)})

    # -- queries -----------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return all(sum(e) == 0 for e in self.terms)

    def constant_value(self):
        if self.is_zero():
            return Fraction(0)
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return next(iter(self.terms.values()))

    def total_degree(self):
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other.nvars != self.nvars:
                raise ValueError("variable count mismatch")
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(other, self.nvars)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = terms.get(e, Fraction(0)) + c
            if s == 0:
                terms.pop(e, None)
            else:
                terms[e] = s
        out = Polynomial.__new__(Polynomial)
        out.nvars = self.nvars
        out.terms = terms
        return out

    __radd__ = __add__

    def __neg__(self):
        out = Polynomial.__new__(Polynomial)
        out.nvars = self.nvars
        out.terms = {e: -c for e, c in self.terms.items()}
        return out

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = terms.get(e, Fraction(0)) + c1 * c2
                if s == 0:
                    terms.pop(e, None)
                else:
                    terms[e] = s
        out = Polynomial.__new__(Polynomial)
        out.nvars = self.nvars
        out.terms = terms
        return out

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = Polynomial.constant(1, self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            c = _as_fraction(other)
            return self * Fraction(c.denominator, c.numerator)
        if isinstance(other, Polynomial):
            return RationalFunction(self, other)
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(other, self.nvars)
        if isinstance(other, RationalFunction):
            return other == self
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    # -- calculus and substitution ----------------------------------------

    def diff(self, index):
        terms = {}
        for e, c in self.terms.items():
            if e[index] == 0:
                continue
            d = list(e)
            d[index] -= 1
            terms[tuple(d)] = c * e[index]
        return Polynomial(self.nvars, terms)

    def substitute(self, values):
        """Compose with polynomials: x_i -> values[i] (all in a common ring)."""
        if len(values) != self.nvars:
            raise ValueError("need one value per variable")
        m = values[0].nvars
        result = Polynomial.zero(m)
        for e, c in self.terms.items():
            term = Polynomial.constant(c, m)
            for i, k in enumerate(e):
                if k:
                    term = term * values[i] ** k
            result = result + term
        return result

    def evaluate(self, point):
        """Evaluate at a point; exact for Fraction inputs, float otherwise."""
        exact = all(isinstance(v, (int, Fraction)) for v in point)
        total = Fraction(0) if exact else 0.0
        for e, c in self.terms.items():
            term = c if exact else float(c)
            for v, k in zip(point, e):
                for _ in range(k):
                    term = term * v
            total = total + term
        return total

    # -- display -----------------------------------------------------------

    def sort_key(self):
        """Graded-lex key of the leading monomial (for normalization)."""
        if not self.terms:
            return None
        return max(self.terms, key=lambda e: (sum(e), e))

    def __str__(self):
        if not self.terms:
            return "0"
        names = DEFAULT_NAMES[: self.nvars] if self.nvars <= len(DEFAULT_NAMES) else [
            f"x{i}" for i in range(self.nvars)
        ]
        parts = []
        for e in sorted(self.terms, key=lambda e: (-sum(e), tuple(-k for k in e))):
            c = self.terms[e]
            factors = [
                names[i] if k == 1 else f"{names[i]}^{k}"
                for i, k in enumerate(e)
                if k
            ]
            mono = "*".join(factors)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append(f"-{mono}")
            else:
                parts.append(f"{c}*{mono}")
        out = " + ".join(parts)
        return out.replace("+ -", "- ")

    __repr__ = __str__


def _content(poly):
    """Positive rational content gcd of the coefficients (0 for the zero polynomial)."""
    num = 0
    den = 1
    for c in poly.terms.values():
        num = math.gcd(num, abs(c.numerator))
        den = math.lcm(den, c.denominator)
    return Fraction(num, den)


def _monomial_gcd(poly):
    it = iter(poly.terms)
    try:
        g = list(next(it))
    except StopIteration:
        return None
    for e in it:
        g = [min(a, b) for a, b in zip(g, e)]
        if not any(g):
            return None
    return tuple(g)


def _shift_down(poly, shift):
    terms = {
        tuple(a - b for a, b in zip(e, shift)): c for e, c in poly.terms.items()
    }
    return Polynomial(poly.nvars, terms)


class RationalFunction:
    """Quotient of polynomials, kept unreduced apart from content/monomial cleanup."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if isinstance(num, (int, Fraction)):
            if den is None:
                raise ValueError("scalar needs an explicit denominator polynomial")
            num = Polynomial.constant(num, den.nvars)
        if den is None:
            den = Polynomial.constant(1, num.nvars)
        if isinstance(den, (int, Fraction)):
            den = Polynomial.constant(den, num.nvars)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator polynomial")
        if num.nvars != den.nvars:
            raise ValueError("variable count mismatch")
        if num.is_zero():
            den = Polynomial.constant(1, num.nvars)
        else:
            shift = _monomial_gcd(num)
            if shift is not None:
                dshift = _monomial_gcd(den)
                if dshift is not None:
                    common = tuple(min(a, b) for a, b in zip(shift, dshift))
                    if any(common):
                        num = _shift_down(num, common)
                        den = _shift_down(den, common)
        if not den.is_zero():
            c = _content(den)
            lead = den.terms[den.sort_key()] if den.terms else Fraction(1)
            if lead < 0:
                c = -c
            if c != 1:
                inv = Fraction(c.denominator, c.numerator)
                num = num * inv
                den = den * inv
        self.num = num
        self.den = den

    @classmethod
    def from_poly(cls, poly):
        return cls(poly)

    @property
    def nvars(self):
        return self.num.nvars

    def is_zero(self):
        return self.num.is_zero()

    def _coerce(self, other):
        if isinstance(other, RationalFunction):
            if other.nvars != self.nvars:
                raise ValueError("variable count mismatch")
            return other
        if isinstance(other, Polynomial):
            return RationalFunction(other)
        if isinstance(other, (int, Fraction)):
            return RationalFunction(Polynomial.constant(other, self.nvars))
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.den == other.den:
            return RationalFunction(self.num + other.num, self.den)
        return RationalFunction(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other / self

    def __pow__(self, k):
        if not isinstance(k, int):
            raise ValueError("integer exponents only")
        if k < 0:
            return RationalFunction(self.den ** (-k), self.num ** (-k))
        return RationalFunction(self.num**k, self.den**k)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return (self.num * other.den - other.num * self.den).is_zero()

    def diff(self, index):
        """Quotient rule, exact."""
        return RationalFunction(
            self.num.diff(index) * self.den - self.num * self.den.diff(index),
            self.den * self.den,
        )

    def __str__(self):
        if self.den.is_constant() and self.den.constant_value() == 1:
            return str(self.num)
        return f"({self.num}) / ({self.den})"

    __repr__ = __str__


def rf_equal(a, b):
    """Exact equality of rational functions by cross-multiplication."""
    if isinstance(a, Polynomial):
        a = RationalFunction(a)
    if isinstance(b, Polynomial):
        b = RationalFunction(b)
    return a == b
