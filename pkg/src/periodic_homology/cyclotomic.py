"""Exact arithmetic in the cyclotomic field Q(xi_n).

Elements are stored as coefficient vectors (Fractions) of polynomials in
xi of degree < phi(n), reduced modulo the n-th cyclotomic polynomial.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd


def _poly_divmod_int(num, den):
    """Divide integer polynomials (lists, low degree first); den monic."""
    num = list(num)
    q = [0] * max(len(num) - len(den) + 1, 1)
    for i in range(len(num) - len(den), -1, -1):
        c = num[i + len(den) - 1]
        q[i] = c
        if c:
            for j, v in enumerate(den):
                num[i + j] -= c * v
    return q, num[: len(den) - 1]


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n):
    """Coefficients of Phi_n, lowest degree first."""
    if n < 1:
        raise ValueError("n must be positive")
    poly = [-1] + [0] * (n - 1) + [1]  # x^n - 1
    for d in range(1, n):
        if n % d == 0:
            poly, rem = _poly_divmod_int(poly, list(cyclotomic_polynomial(d)))
            assert not any(rem)
    while len(poly) > 1 and poly[-1] == 0:
        poly.pop()
    return tuple(poly)


def euler_phi(n):
    return sum(1 for k in range(1, n + 1) if gcd(k, n) == 1)


def divisors(n):
    return [d for d in range(1, n + 1) if n % d == 0]


class CycElt:
    """An element of Q(xi_n)."""

    __slots__ = ("n", "c")

    def __init__(self, n, coeffs=()):
        self.n = n
        deg = len(cyclotomic_polynomial(n)) - 1
        v = [Fraction(x) for x in coeffs]
        if len(v) > deg:
            v = _reduce(n, v)
        v += [Fraction(0)] * (deg - len(v))
        self.c = tuple(v)

    @classmethod
    def xi_power(cls, n, k):
        k %= n
        v = [0] * (k + 1)
        v[k] = 1
        return cls(n, v)

    @classmethod
    def scalar(cls, n, a):
        return cls(n, [a])

    def _lift(self, other):
        if isinstance(other, CycElt):
            if other.n != self.n:
                raise ValueError("mixing cyclotomic fields")
            return other
        return CycElt(self.n, [other])

    def __add__(self, other):
        o = self._lift(other)
        return CycElt(self.n, [a + b for a, b in zip(self.c, o.c)])

    __radd__ = __add__

    def __neg__(self):
        return CycElt(self.n, [-a for a in self.c])

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, CycElt):
            return CycElt(self.n, [a * other for a in self.c])
        o = self._lift(other)
        prod = [Fraction(0)] * (2 * len(self.c))
        for i, a in enumerate(self.c):
            if a:
                for j, b in enumerate(o.c):
                    if b:
                        prod[i + j] += a * b
        return CycElt(self.n, _reduce(self.n, prod))

    __rmul__ = __mul__

    def inverse(self):
        if not self:
            raise ZeroDivisionError("inverse of zero")
        phi = [Fraction(x) for x in cyclotomic_polynomial(self.n)]
        a = _trim(list(self.c))
        # extended Euclid: find u with u*a = 1 mod phi
        r0, r1 = phi, a
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while len(r1) > 1:
            q, r = _divmod_frac(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _trim(_sub(s0, _mul(q, s1)))
        inv_c = r1[0]
        return CycElt(self.n, _reduce(self.n, [x / inv_c for x in s1]))

    def __truediv__(self, other):
        if isinstance(other, CycElt):
            return self * other.inverse()
        return CycElt(self.n, [a / other for a in self.c])

    def __rtruediv__(self, other):
        return self._lift(other) * self.inverse()

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        out = CycElt(self.n, [1])
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __bool__(self):
        return any(self.c)

    def __eq__(self, other):
        if isinstance(other, CycElt):
            return self.n == other.n and self.c == other.c
        if isinstance(other, (int, Fraction)):
            return self.c[0] == other and not any(self.c[1:])
        return NotImplemented

    def __hash__(self):
        return hash((self.n, self.c))

    def is_rational(self):
        return not any(self.c[1:])

    def __repr__(self):
        terms = [f"{a}*xi^{i}" for i, a in enumerate(self.c) if a]
        return f"CycElt({self.n}: {' + '.join(terms) or '0'})"


def _trim(v):
    v = list(v)
    while len(v) > 1 and v[-1] == 0:
        v.pop()
    return v


def _sub(a, b):
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]


def _mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _divmod_frac(num, den):
    num = _trim(num)
    den = _trim(den)
    if len(num) < len(den):
        return [Fraction(0)], num
    q = [Fraction(0)] * (len(num) - len(den) + 1)
    rem = list(num)
    for i in range(len(num) - len(den), -1, -1):
        c = rem[i + len(den) - 1] / den[-1]
        q[i] = c
        for j, v in enumerate(den):
            rem[i + j] -= c * v
    return q, _trim(rem[: len(den) - 1] or [Fraction(0)])


def _reduce(n, v):
    phi = cyclotomic_polynomial(n)
    deg = len(phi) - 1
    v = list(v)
    for i in range(len(v) - 1, deg - 1, -1):
        c = v[i]
        if c:
            for j in range(deg + 1):
                v[i - deg + j] -= c * phi[j]
    return v[:deg] if deg else []
