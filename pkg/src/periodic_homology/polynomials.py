"""Exact Laurent polynomials in one and two variables.

Coefficients are Python integers by default; any type supporting the
ring operations (Fraction, cyclotomic elements) also works.
"""
from __future__ import annotations

import re
from fractions import Fraction


def _clean(d):
    return {k: v for k, v in d.items() if v}


class LaurentPoly:
    """Laurent polynomial in a single variable q."""

    __slots__ = ("_c",)
    var = "q"

    def __init__(self, coeffs=None):
        self._c = _clean(dict(coeffs or {}))

    # construction
    @classmethod
    def const(cls, c):
        return cls({0: c})

    @classmethod
    def monomial(cls, e, c=1):
        return cls({e: c})

    @classmethod
    def q(cls):
        return cls({1: 1})

    @classmethod
    def quantum_integer(cls, n):
        """[n] = (q^n - q^-n)/(q - q^-1) = q^(n-1) + q^(n-3) + ... + q^(1-n)."""
        return cls({e: 1 for e in range(1 - n, n, 2)})

    # access
    @property
    def coeffs(self):
        return dict(self._c)

    def items(self):
        return sorted(self._c.items())

    def __getitem__(self, e):
        return self._c.get(e, 0)

    def is_zero(self):
        return not self._c

    def __bool__(self):
        return bool(self._c)

    def min_deg(self):
        return min(self._c) if self._c else None

    def max_deg(self):
        return max(self._c) if self._c else None

    def content(self):
        from math import gcd
        g = 0
        for v in self._c.values():
            g = gcd(g, int(v))
        return g

    # arithmetic
    def _coerce(self, other):
        if isinstance(other, LaurentPoly):
            return other
        return LaurentPoly.const(other)

    def __add__(self, other):
        other = self._coerce(other)
        d = dict(self._c)
        for e, v in other._c.items():
            d[e] = d.get(e, 0) + v
        return LaurentPoly(d)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -v for e, v in self._c.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, LaurentPoly):
            return LaurentPoly({e: v * other for e, v in self._c.items()})
        d = {}
        for e1, v1 in self._c.items():
            for e2, v2 in other._c.items():
                d[e1 + e2] = d.get(e1 + e2, 0) + v1 * v2
        return LaurentPoly(d)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            if len(self._c) == 1:
                (e, v), = self._c.items()
                if v in (1, -1):
                    return LaurentPoly({e * n: v ** (-n)})
            raise ValueError("negative power of a non-unit")
        out = LaurentPoly.const(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self._c == other._c
        try:
            return self._c == LaurentPoly.const(other)._c
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash(tuple(sorted(self._c.items())))

    def shift(self, k):
        """Multiply by q^k."""
        return LaurentPoly({e + k: v for e, v in self._c.items()})

    def bar(self):
        """The involution q -> q^-1."""
        return LaurentPoly({-e: v for e, v in self._c.items()})

    def subs_power(self, k):
        """p(q^k)."""
        if k == 0:
            return LaurentPoly.const(sum(self._c.values()))
        return LaurentPoly({e * k: v for e, v in self._c.items()})

    def map_coeffs(self, f):
        return LaurentPoly({e: f(v) for e, v in self._c.items()})

    def evaluate(self, x):
        """Evaluate at an element x of any ring in which x is invertible."""
        total = 0
        for e, v in self._c.items():
            total = total + v * (x ** e if e >= 0 else (1 / x) ** (-e))
        return total

    def divmod_monic(self, divisor):
        """Division by a Laurent polynomial whose extreme coefficients are units.

        Returns (quotient, remainder) with the remainder supported in a window
        of exponents [min_deg(self), min_deg(self) + span(divisor)).
        """
        if divisor.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        lo, hi = divisor.min_deg(), divisor.max_deg()
        lead = divisor[hi]
        if lead not in (1, -1):
            raise ValueError("divisor leading coefficient must be a unit")
        rem = dict(self._c)
        quo = {}
        if not rem:
            return LaurentPoly(), LaurentPoly()
        floor = min(rem)
        span = hi - lo
        while rem:
            top = max(rem)
            if top - floor < span:
                break
            c = rem[top] * lead  # lead is +-1 so lead^-1 == lead
            shift = top - hi
            quo[shift] = quo.get(shift, 0) + c
            for e, v in divisor._c.items():
                k = e + shift
                nv = rem.get(k, 0) - c * v
                if nv:
                    rem[k] = nv
                else:
                    rem.pop(k, None)
        return LaurentPoly(quo), LaurentPoly(rem)

    def exact_div(self, divisor):
        """Exact quotient; raises ValueError if divisor does not divide."""
        if divisor.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        lo, hi = divisor.min_deg(), divisor.max_deg()
        lead = divisor[hi]
        rem = {e: Fraction(v) for e, v in self._c.items()}
        quo = {}
        while rem:
            top = max(rem)
            bottom = min(rem)
            if top - bottom < hi - lo:
                raise ValueError("not divisible")
            c = rem[top] / lead
            shift = top - hi
            quo[shift] = c
            for e, v in divisor._c.items():
                k = e + shift
                nv = rem.get(k, 0) - c * v
                if nv:
                    rem[k] = nv
                else:
                    rem.pop(k, None)
        out = {}
        for e, v in quo.items():
            if v.denominator != 1:
                raise ValueError("quotient is not integral")
            out[e] = int(v)
        return LaurentPoly(out)

    def divides(self, other):
        try:
            other.exact_div(self)
            return True
        except ValueError:
            return False

    # text and json
    def to_text(self):
        """Canonical ascending form, e.g. '-1*q^-3 + 2*q^1'."""
        if not self._c:
            return "0"
        return " + ".join(f"{v}*{self.var}^{e}" for e, v in sorted(self._c.items()))

    _TERM = re.compile(r"^\s*(-?\d+)\*([a-z])\^(-?\d+)\s*$")

    @classmethod
    def from_text(cls, text):
        text = text.strip()
        if text == "0":
            return cls()
        d = {}
        for part in text.split(" + "):
            m = cls._TERM.match(part)
            if not m or m.group(2) != cls.var:
                raise ValueError(f"bad term {part!r}")
            e = int(m.group(3))
            if e in d:
                raise ValueError("repeated exponent")
            d[e] = int(m.group(1))
        return cls(d)

    def pretty(self):
        """Human readable, descending exponents: 'q^3 + q^1 + q^-1 + q^-3'."""
        if not self._c:
            return "0"
        out = []
        for e, v in sorted(self._c.items(), reverse=True):
            mag = abs(v)
            if e == 0:
                body = str(mag)
            elif mag == 1:
                body = f"{self.var}^{e}"
            else:
                body = f"{mag}*{self.var}^{e}"
            if not out:
                out.append(body if v > 0 else "-" + body)
            else:
                out.append(("+ " if v > 0 else "- ") + body)
        return " ".join(out)

    def to_json(self):
        items = sorted(self._c.items())
        return {"exponents": [e for e, _ in items], "coefficients": [int(v) for _, v in items]}

    @classmethod
    def from_json(cls, obj):
        return cls(dict(zip(obj["exponents"], obj["coefficients"])))

    def __repr__(self):
        return f"LaurentPoly({self.to_text()})"


class Poly2:
    """Laurent polynomial in two variables, keyed by exponent pairs."""

    __slots__ = ("_c",)
    vars = ("x", "y")

    def __init__(self, coeffs=None):
        self._c = _clean(dict(coeffs or {}))

    @classmethod
    def const(cls, c):
        return cls({(0, 0): c})

    @classmethod
    def monomial(cls, i, j, c=1):
        return cls({(i, j): c})

    @property
    def coeffs(self):
        return dict(self._c)

    def items(self):
        return sorted(self._c.items())

    def __getitem__(self, key):
        return self._c.get(key, 0)

    def is_zero(self):
        return not self._c

    def __bool__(self):
        return bool(self._c)

    def _coerce(self, other):
        if isinstance(other, Poly2):
            return other
        return type(self).const(other)

    def __add__(self, other):
        other = self._coerce(other)
        d = dict(self._c)
        for k, v in other._c.items():
            d[k] = d.get(k, 0) + v
        return type(self)(d)

    __radd__ = __add__

    def __neg__(self):
        return type(self)({k: -v for k, v in self._c.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly2):
            return type(self)({k: v * other for k, v in self._c.items()})
        d = {}
        for (a1, b1), v1 in self._c.items():
            for (a2, b2), v2 in other._c.items():
                k = (a1 + a2, b1 + b2)
                d[k] = d.get(k, 0) + v1 * v2
        return type(self)(d)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power")
        out = type(self).const(1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, Poly2):
            return self._c == other._c
        return self._c == type(self).const(other)._c

    def __hash__(self):
        return hash(tuple(sorted(self._c.items())))

    def specialize_first(self, value):
        """Substitute a scalar for the first variable; returns a LaurentPoly in the second."""
        d = {}
        for (i, j), v in self._c.items():
            x = Fraction(value) ** i
            d[j] = d.get(j, 0) + v * (int(x) if x.denominator == 1 else x)
        return LaurentPoly(d)

    def to_text(self):
        if not self._c:
            return "0"
        x, y = self.vars
        return " + ".join(f"{v}*{x}^{i}*{y}^{j}" for (i, j), v in sorted(self._c.items()))

    def to_json(self):
        items = sorted(self._c.items())
        return {
            "exponents": [[i, j] for (i, j), _ in items],
            "coefficients": [int(v) for _, v in items],
        }

    @classmethod
    def from_json(cls, obj):
        return cls({tuple(e): c for e, c in zip(obj["exponents"], obj["coefficients"])})

    def __repr__(self):
        return f"{type(self).__name__}({self.to_text()})"


class BiPoly(Poly2):
    """Poincare-type polynomial in (t, q)."""

    vars = ("t", "q")

    def at_t(self, value):
        return self.specialize_first(value)

    def bar_q(self):
        return BiPoly({(i, -j): v for (i, j), v in self._c.items()})

    def flip(self):
        """(t, q) -> (t^-1, q^-1)."""
        return BiPoly({(-i, -j): v for (i, j), v in self._c.items()})

    def nonnegative(self):
        return all(v >= 0 for v in self._c.values())


class HomflyPoly(Poly2):
    """Two-variable polynomial in (a, b)."""

    vars = ("a", "b")

    def mirror(self):
        """a -> a^-1 together with b -> -b, the effect of mirroring a link."""
        return HomflyPoly({(-i, j): v * (-1) ** (j % 2) for (i, j), v in self._c.items()})
