"""HOMFLYPT by a descending-diagram skein tree, RT_N specializations and
congruence tests for polynomials in q.

Skein relation: a X(L+) - a^-1 X(L-) = b X(L0), X(unknot) = 1.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Dict, Optional

from .cyclotomic import CycElt
from .diagram import Crossing, Diagram
from .polynomials import HomflyPoly, LaurentPoly


class BudgetExceeded(RuntimeError):
    pass


DEFAULT_CROSSING_BUDGET = 16

A = HomflyPoly.monomial(1, 0)
A_INV = HomflyPoly.monomial(-1, 0)
B = HomflyPoly.monomial(0, 1)
DELTA = HomflyPoly({(1, -1): 1, (-1, -1): -1})


def _delta_power(k):
    out = HomflyPoly.const(1)
    for _ in range(k):
        out = out * DELTA
    return out


# ---------------------------------------------------------------- diagram surgery

def switch_crossing(d: Diagram, i: int) -> Diagram:
    c = d.crossings[i]
    a, b, cc, dd = c.quad
    new = Crossing((dd, a, b, cc), -1) if c.sign > 0 else Crossing((b, cc, dd, a), 1)
    crossings = list(d.crossings)
    crossings[i] = new
    return Diagram(tuple(crossings), d.n_edges, d.unknots)


def smooth_crossing(d: Diagram, i: int) -> Diagram:
    """Oriented smoothing of crossing i; labels are compacted afterwards."""
    c = d.crossings[i]
    a, b, cc, dd = c.quad
    pairs = ((a, b), (dd, cc)) if c.sign > 0 else ((a, dd), (b, cc))
    parent = {e: e for e in range(1, d.n_edges + 1)}

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    for x, y in pairs:
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[ry] = rx
    rest = [cr for k, cr in enumerate(d.crossings) if k != i]
    used = sorted({find(e) for cr in rest for e in cr.quad})
    touched = {find(e) for e in c.quad}
    loose = len(touched - set(used))
    remap = {e: k + 1 for k, e in enumerate(used)}
    new = tuple(Crossing(tuple(remap[find(e)] for e in cr.quad), cr.sign) for cr in rest)
    return Diagram(new, len(used), d.unknots + loose)


def first_bad_crossing(d: Diagram):
    """First crossing met on its under-strand, or None if d is descending.

    Components are walked in order of smallest label, each from its
    smallest edge.
    """
    heads = d.edge_heads()
    seen = set()
    for comp in d.edge_components():
        for e in comp:
            i, slot = heads[e]
            if i in seen:
                continue
            seen.add(i)
            if slot == 0:
                return i
    return None


def random_relabel(d: Diagram, rng) -> Diagram:
    """Same diagram, edges renumbered along a random component order and
    random base points, so first_bad_crossing walks it differently."""
    comps = list(d.edge_components())
    rng.shuffle(comps)
    order = []
    for c in comps:
        k = rng.randrange(len(c))
        order.extend(c[k:] + c[:k])
    perm = [0] * d.n_edges
    for new, old in enumerate(order, start=1):
        perm[old - 1] = new
    return d.relabel(range(d.n_crossings), perm)


def _canonical(d: Diagram):
    return (d.unknots, tuple(sorted((c.quad, c.sign) for c in d.crossings)))


def homfly(d: Diagram, budget: int = DEFAULT_CROSSING_BUDGET, rng=None,
           memo: Optional[dict] = None) -> HomflyPoly:
    """Reduced HOMFLYPT polynomial X(a, b) of an oriented diagram.

    rng (a Random or a seed) picks a random traversal for the whole tree;
    the value must not depend on it.
    """
    if d.n_crossings > budget:
        raise BudgetExceeded(f"{d.n_crossings} crossings exceed the skein budget {budget}")
    if rng is not None:
        if isinstance(rng, int):
            rng = random.Random(rng)
        d = random_relabel(d, rng)
    memo = {} if memo is None else memo
    return _homfly(d, memo)


def _homfly(d, memo):
    key = _canonical(d)
    if key in memo:
        return memo[key]
    i = first_bad_crossing(d)
    if i is None:
        val = _delta_power(d.n_components() - 1)
    else:
        sw = _homfly(switch_crossing(d, i), memo)
        sm = _homfly(smooth_crossing(d, i), memo)
        if d.crossings[i].sign > 0:
            # X+ = a^-2 X- + a^-1 b X0
            val = A_INV * A_INV * sw + A_INV * B * sm
        else:
            # X- = a^2 X+ - a b X0
            val = A * A * sw - A * B * sm
    memo[key] = val
    return val


def skein_residual(d: Diagram, i: int) -> HomflyPoly:
    """a X(L+) - a^-1 X(L-) - b X(L0) for the triple at crossing i (should vanish)."""
    x = homfly(d)
    y = homfly(switch_crossing(d, i))
    z = homfly(smooth_crossing(d, i))
    if d.crossings[i].sign > 0:
        return A * x - A_INV * y - B * z
    return A * y - A_INV * x - B * z


# ---------------------------------------------------------------- specializations

def quantum_integer(n) -> LaurentPoly:
    return LaurentPoly.quantum_integer(n)


def substitute(x: HomflyPoly, a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """X(a, b) for Laurent polynomials a (a unit monomial) and b; negative b powers
    are cleared and divided out exactly."""
    items = x.items()
    if not items:
        return LaurentPoly()
    k = max(0, -min(j for (_, j), _ in items))
    total = LaurentPoly()
    for (i, j), v in items:
        total = total + (a ** i) * (b ** (j + k)) * v
    return total.exact_div(b ** k) if k else total


def rt(x: HomflyPoly, N: int, reduced: bool = False) -> LaurentPoly:
    """RT_N(q) = X(q^N, q - q^-1), times [N] unless reduced."""
    if N < 2:
        raise ValueError("N must be at least 2")
    qm = LaurentPoly({1: 1, -1: -1})
    val = substitute(x, LaurentPoly.monomial(N), qm)
    return val if reduced else val * quantum_integer(N)


def t_poly(N: int) -> LaurentPoly:
    """T_N = q^4N - 2 q^2N + 1 - q^2N (q - q^-1)^2."""
    qm = LaurentPoly({1: 1, -1: -1})
    return (LaurentPoly.monomial(4 * N) - LaurentPoly.monomial(2 * N, 2) + 1
            - LaurentPoly.monomial(2 * N) * qm * qm)


T_TREFOIL = HomflyPoly({(4, 0): 1, (2, 0): -2, (0, 0): 1, (2, 2): -1})


def homfly_divmod(num: HomflyPoly, den: HomflyPoly):
    """Division in Z[a^+-1, b^+-1] by den, treating both as polynomials in a.

    den must have unit coefficients (constants +-1) at its highest and
    lowest a-degree.  Returns (quotient, remainder) with the remainder of
    a-span smaller than den's.
    """
    def by_a(p):
        out = {}
        for (i, j), v in p.items():
            out.setdefault(i, {})[j] = v
        return {i: LaurentPoly(c) for i, c in out.items()}

    dn = by_a(den)
    hi, lo = max(dn), min(dn)
    lead = dn[hi]
    if len(lead.coeffs) != 1 or list(lead.coeffs.items())[0] not in ((0, 1), (0, -1)):
        raise ValueError("divisor must have a constant unit leading coefficient in a")
    sgn = lead[0]
    rem = by_a(num)
    quo = {}
    floor = min(rem) if rem else 0
    while rem and max(rem) - floor >= hi - lo:
        top = max(rem)
        c = rem[top] * sgn
        sh = top - hi
        quo[sh] = c
        for e, v in dn.items():
            k = e + sh
            nv = rem.get(k, LaurentPoly()) - c * v
            if nv.is_zero():
                rem.pop(k, None)
            else:
                rem[k] = nv
    def back(d):
        out = {}
        for i, p in d.items():
            for j, v in p.coeffs.items():
                out[(i, j)] = v
        return HomflyPoly(out)
    return back(quo), back(rem)


@dataclass
class DivisibilityReport:
    divisible: bool
    quotient: HomflyPoly
    remainder: HomflyPoly

    def to_json(self):
        return {"divisible": self.divisible, "quotient": self.quotient.to_json(),
                "remainder": self.remainder.to_json()}


def trefoil_divisibility(x: HomflyPoly, T: HomflyPoly = T_TREFOIL) -> DivisibilityReport:
    """Is X - 1 a multiple of T(a, b)?"""
    q, r = homfly_divmod(x - 1, T)
    return DivisibilityReport(r.is_zero() and q * T == x - 1, q, r)


# ---------------------------------------------------------------- roots of unity and ideals

def eval_cyclotomic(p: LaurentPoly, n: int) -> CycElt:
    """p evaluated at a primitive n-th root of unity, exactly."""
    if p.is_zero():
        return CycElt(n, [0])
    k = -min(p.min_deg(), 0)
    shifted = p.shift(k)
    coeffs = [0] * (shifted.max_deg() + 1)
    for e, v in shifted.items():
        coeffs[e] = v
    return CycElt(n, coeffs) * CycElt.xi_power(n, -k)


def gap_poly(a: int) -> LaurentPoly:
    """q^a - q^-a."""
    return LaurentPoly({a: 1, -a: -1})


def congruent_mod_gap(p: LaurentPoly, a: int) -> bool:
    """p == 0 mod (q^a - q^-a) in Z[q, q^-1]."""
    return gap_poly(a).divides(p)


def symmetry_defect(p: LaurentPoly) -> LaurentPoly:
    """p(q) - p(q^-1)."""
    return p - p.bar()


@dataclass
class CongruenceReport:
    member: bool
    prime: int
    ell: int
    poly: LaurentPoly
    quotients: Dict[int, LaurentPoly] = field(default_factory=dict)
    tail: Optional[LaurentPoly] = None
    failing_layer: Optional[int] = None
    failing_residue: Optional[LaurentPoly] = None

    def witness_sum(self) -> LaurentPoly:
        """sum_k p^(ell-k) Q_k (q^p^k - q^-p^k) + p^ell * tail."""
        p, ell = self.prime, self.ell
        total = LaurentPoly()
        for k, Q in self.quotients.items():
            total = total + Q * gap_poly(p ** k) * (p ** (ell - k))
        if self.tail is not None:
            total = total + self.tail * (p ** ell)
        return total

    def verify(self) -> bool:
        if not self.member:
            return self.failing_residue is not None
        return self.witness_sum() == self.poly

    def to_json(self):
        return {
            "member": self.member,
            "prime": self.prime,
            "ell": self.ell,
            "poly": self.poly.to_text(),
            "quotients": {str(k): v.to_text() for k, v in sorted(self.quotients.items())},
            "tail": None if self.tail is None else self.tail.to_text(),
            "failing_layer": self.failing_layer,
            "failing_residue": None if self.failing_residue is None else self.failing_residue.to_text(),
        }


def in_ideal(poly: LaurentPoly, prime: int, ell: int) -> CongruenceReport:
    """Membership in I = (f_ell, p f_(ell-1), ..., p^(ell-1) f_1, p^ell), f_k = q^p^k - q^-p^k.

    Uses I_ell = (f_ell) + p I_(ell-1): reduce modulo f_ell, the remainder
    must vanish mod p, divide by p and continue one level down.
    """
    if ell < 0:
        raise ValueError("ell must be nonnegative")
    report = CongruenceReport(False, prime, ell, poly)
    r = poly
    for k in range(ell, 0, -1):
        Q, R = r.divmod_monic(gap_poly(prime ** k))
        report.quotients[k] = Q
        if any(v % prime for _, v in R.items()):
            report.failing_layer = k
            report.failing_residue = R
            return report
        r = R.map_coeffs(lambda v: v // prime)
    report.tail = r
    report.member = True
    return report
