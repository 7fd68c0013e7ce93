"""N=2 chain complexes of link diagrams, their homology and Lee-Gornik pages.

The state space over a resolution is a tensor power of
A = k[X]/((X - r1)(X - r2)), one factor per circle, with deg 1 = +1 and
deg X = -1.  A basis element is (vertex, mask) where bit k of mask set
means circle k carries X.  Circles are ordered as returned by resolve().
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Dict, List, Optional, Tuple

from .cube import ActionData, Cube, SignAssignment, complex_shift, standard_sign
from .cyclotomic import CycElt, euler_phi, divisors
from .diagram import Diagram, PeriodicDiagram, resolve
from .linalg import matmul, reduce_columns
from .polynomials import BiPoly


class ComplexError(RuntimeError):
    """A verification that must hold by construction failed."""


@dataclass(frozen=True)
class FrobeniusSpec:
    roots: Tuple[int, int]
    N: int = 2

    @classmethod
    def singular(cls):
        return cls((0, 0))

    @classmethod
    def generic(cls):
        return cls((1, -1))

    @property
    def is_singular(self):
        return self.roots == (0, 0)

    @property
    def is_generic(self):
        return self.roots[0] != self.roots[1]

    def mult(self, x, y):
        """Product of two basis letters (0 = 1, 1 = X): list of (letter, coeff)."""
        r1, r2 = self.roots
        if x == 0 or y == 0:
            return [(x | y, 1)]
        return [(1, r1 + r2), (0, -r1 * r2)]

    def comult(self, x):
        r1, r2 = self.roots
        if x == 0:
            return [((0, 1), 1), ((1, 0), 1), ((0, 0), -(r1 + r2))]
        return [((1, 1), 1), ((0, 0), -r1 * r2)]


# ---------------------------------------------------------------- dimensions

class BigradedDims:
    """Map (h, q) or (h, q, j) -> dimension, zero entries dropped."""

    def __init__(self, dims=None, N=2, m=None):
        self.N = N
        self.m = m
        self.dims = {k: v for k, v in (dims or {}).items() if v}

    def __getitem__(self, key):
        return self.dims.get(key, 0)

    def __eq__(self, other):
        return isinstance(other, BigradedDims) and self.dims == other.dims

    def __repr__(self):
        return f"BigradedDims({dict(sorted(self.dims.items()))})"

    def total(self):
        return sum(self.dims.values())

    def by_h(self):
        out = {}
        for k, v in self.dims.items():
            out[k[0]] = out.get(k[0], 0) + v
        return out

    def poincare(self) -> BiPoly:
        out = {}
        for k, v in self.dims.items():
            out[(k[0], k[1])] = out.get((k[0], k[1]), 0) + v
        return BiPoly(out)

    def flipped(self):
        return BigradedDims({(-k[0], -k[1]) + tuple(k[2:]): v for k, v in self.dims.items()}, self.N, self.m)

    def __add__(self, other):
        d = dict(self.dims)
        for k, v in other.dims.items():
            d[k] = d.get(k, 0) + v
        return BigradedDims(d, self.N, self.m)

    def to_json(self):
        entries = []
        for k, v in sorted(self.dims.items()):
            e = {"h": k[0], "q": k[1]}
            if len(k) > 2:
                e["j"] = k[2]
            e["dim"] = v
            entries.append(e)
        out = {"N": self.N, "entries": entries}
        if self.m is not None:
            out["m"] = self.m
        return out

    @classmethod
    def from_json(cls, obj):
        dims = {}
        for e in obj["entries"]:
            key = (e["h"], e["q"]) + ((e["j"],) if "j" in e else ())
            dims[key] = e["dim"]
        return cls(dims, obj.get("N", 2), obj.get("m"))


# ---------------------------------------------------------------- the complex

class GradedComplex:
    """Chain complex with basis (vertex, mask) split by homological degree.

    d[h] is a list of sparse columns: d[h][i] = {row index in degree h+1: coeff}.
    """

    def __init__(self, diagram: Diagram, spec: FrobeniusSpec, sign: SignAssignment):
        self.diagram = diagram
        self.spec = spec
        self.sign = sign
        self.cube = sign.cube
        self.circles = []
        self.basis: Dict[int, List[Tuple[int, int]]] = {}
        self.q: Dict[int, List[int]] = {}
        self.index: Dict[Tuple[int, int], Tuple[int, int]] = {}
        self.d: Dict[int, List[Dict[int, int]]] = {}

    def degrees(self):
        return sorted(self.basis)

    def dim(self):
        return sum(len(b) for b in self.basis.values())

    def chain_dims(self):
        out = {}
        for h, qs in self.q.items():
            for q in qs:
                out[(h, q)] = out.get((h, q), 0) + 1
        return BigradedDims(out)

    def columns(self, h):
        return self.d.get(h, [{} for _ in self.basis.get(h, [])])


def _vertex_circles(d: Diagram, cube: Cube, v):
    return resolve(d, cube.state(v)).circles


def build_complex(d: Diagram, spec: Optional[FrobeniusSpec] = None,
                  s: Optional[SignAssignment] = None, verify: bool = True) -> GradedComplex:
    spec = spec or FrobeniusSpec.singular()
    s = s or standard_sign(d)
    cube = s.cube
    if cube.signs != tuple(d.signs):
        raise ValueError("sign assignment does not match the diagram")
    c = GradedComplex(d, spec, s)
    c.circles = [_vertex_circles(d, cube, v) for v in range(cube.size)]
    for v in range(cube.size):
        h, qs = complex_shift(cube, v)
        nc = len(c.circles[v])
        for mask in range(1 << nc):
            c.index[(v, mask)] = (h, len(c.basis.setdefault(h, [])))
            c.basis[h].append((v, mask))
            c.q.setdefault(h, []).append(qs + nc - 2 * bin(mask).count("1"))
    for h in c.basis:
        c.d[h] = [dict() for _ in c.basis[h]]
    lookup = [{circ: k for k, circ in enumerate(cs)} for cs in c.circles]
    for v, i in cube.edges():
        w = v | (1 << i)
        sgn = -1 if s(v, i) else 1
        _edge_map(c, spec, d.crossings[i].quad, v, w, lookup, sgn)
    if verify:
        verify_complex(c)
    return c


def _edge_map(c, spec, quad, v, w, lookup, sgn):
    a, b, cc, dd = quad
    cv, cw = c.circles[v], c.circles[w]
    lw = lookup[w]

    def find(circles, e):
        for k, circ in enumerate(circles):
            if e in circ:
                return k
        raise ComplexError("edge missing from resolution")

    touched_v = {find(cv, a), find(cv, cc)}
    rest = [(k, lw[circ]) for k, circ in enumerate(cv) if k not in touched_v]
    h_src = c.index[(v, 0)][0]
    col_list = c.d[h_src]
    if len(touched_v) == 2:
        A, B = find(cv, a), find(cv, cc)
        C = find(cw, a)
        for mask in range(1 << len(cv)):
            base = 0
            for k, kk in rest:
                if (mask >> k) & 1:
                    base |= 1 << kk
            terms = spec.mult((mask >> A) & 1, (mask >> B) & 1)
            col = col_list[c.index[(v, mask)][1]]
            for letter, coeff in terms:
                if coeff:
                    row = c.index[(w, base | (letter << C))][1]
                    col[row] = col.get(row, 0) + sgn * coeff
                    if not col[row]:
                        del col[row]
    else:
        A = find(cv, a)
        C, D = find(cw, a), find(cw, b)
        for mask in range(1 << len(cv)):
            base = 0
            for k, kk in rest:
                if (mask >> k) & 1:
                    base |= 1 << kk
            col = col_list[c.index[(v, mask)][1]]
            for (x, y), coeff in spec.comult((mask >> A) & 1):
                if coeff:
                    row = c.index[(w, base | (x << C) | (y << D))][1]
                    col[row] = col.get(row, 0) + sgn * coeff
                    if not col[row]:
                        del col[row]


def verify_complex(c: GradedComplex):
    for h in c.degrees():
        if h + 1 in c.d and h + 2 in c.basis:
            sq = matmul(c.d[h + 1], c.d[h])
            if any(sq_col for sq_col in sq):
                raise ComplexError(f"d o d != 0 in degree {h}")
        for i, col in enumerate(c.d[h]):
            qx = c.q[h][i]
            for r in col:
                qy = c.q[h + 1][r]
                if c.spec.is_singular and qy != qx:
                    raise ComplexError("singular differential is not q-homogeneous")
                if qy < qx:
                    raise ComplexError("differential decreases q")


# ---------------------------------------------------------------- homology

@dataclass
class _FieldComplex:
    """q-gradings and sparse columns per homological degree."""
    q: Dict[int, List[int]]
    d: Dict[int, List[dict]]
    m: Optional[int] = None


def _as_field_complex(c) -> _FieldComplex:
    if isinstance(c, _FieldComplex):
        return c
    return _FieldComplex(c.q, c.d)


def _block_homology(fc: _FieldComplex, N=2, label=None) -> BigradedDims:
    ranks = {}
    for h, cols in fc.d.items():
        by_q = {}
        for i, col in enumerate(cols):
            by_q.setdefault(fc.q[h][i], []).append(col)
        for q, block in by_q.items():
            if any(block):
                ranks[(h, q)] = len(reduce_columns(block)[0])
    dims = {}
    for h, qs in fc.q.items():
        for q in qs:
            dims[(h, q)] = dims.get((h, q), 0) + 1
    for (h, q), r in ranks.items():
        dims[(h, q)] -= r
        dims[(h + 1, q)] -= r
    if label is not None:
        dims = {k + (label,): v for k, v in dims.items()}
    for k, v in dims.items():
        if v < 0:
            raise ComplexError("negative homology dimension")
    return BigradedDims(dims, N)


def homology_bigraded(c) -> BigradedDims:
    if isinstance(c, GradedComplex) and not c.spec.is_singular:
        raise ValueError("bigraded homology needs the singular specialization; use lee_gornik")
    return _block_homology(_as_field_complex(c))


# ---------------------------------------------------------------- Lee-Gornik

@dataclass
class SpectralSequence:
    """Pages of the q-filtration spectral sequence, read off a persistence pairing.

    A pair (x, y) with q(y) - q(x) = 4k lives on pages E_1..E_k and is hit
    by the page-k differential of bidegree (1, 4k); k = 0 pairs are gone
    by E_1.  Unpaired basis elements give E_infinity.
    """
    pairs: List[Tuple[int, int, int]]  # (h of source, q of source, gap)
    survivors: List[Tuple[int, int]]
    N: int = 2
    label: Optional[int] = None

    def _key(self, h, q):
        return (h, q) if self.label is None else (h, q, self.label)

    def page(self, r) -> BigradedDims:
        dims = {}
        for h, q in self.survivors:
            k = self._key(h, q)
            dims[k] = dims.get(k, 0) + 1
        for h, q, gap in self.pairs:
            if r == 0 or gap >= 2 * self.N * r and gap > 0:
                for key in (self._key(h, q), self._key(h + 1, q + gap)):
                    dims[key] = dims.get(key, 0) + 1
        return BigradedDims(dims, self.N)

    def last_page(self):
        return max([gap // (2 * self.N) for _, _, gap in self.pairs] + [1]) + 1

    def e_infinity(self) -> BigradedDims:
        return self.page(self.last_page())

    def differential_bidegree(self, r):
        return (1, 2 * self.N * r)

    def R(self, k) -> BiPoly:
        out = {}
        for h, q, gap in self.pairs:
            if gap == 2 * self.N * k:
                out[(h, q)] = out.get((h, q), 0) + 1
        return BiPoly(out)

    def r_polys(self):
        ks = sorted({gap // (2 * self.N) for _, _, gap in self.pairs if gap > 0})
        return {k: self.R(k) for k in ks}

    def lee_poly(self) -> BiPoly:
        return self.e_infinity().poincare()

    def e1_poly(self) -> BiPoly:
        return self.page(1).poincare()

    def reconstruct(self) -> BiPoly:
        """LeeP + sum_k (1 + t q^{2Nk}) R_k."""
        out = self.lee_poly()
        for k, r in self.r_polys().items():
            out = out + (BiPoly.const(1) + BiPoly.monomial(1, 2 * self.N * k)) * r
        return out


def _persistence(fc: _FieldComplex, N=2, label=None) -> SpectralSequence:
    pairs, killed, born = [], {}, {}
    order = {h: sorted(range(len(qs)), key=lambda i: (-qs[i], i)) for h, qs in fc.q.items()}
    pos = {h: {i: p for p, i in enumerate(o)} for h, o in order.items()}
    for h in sorted(fc.q):
        cols = fc.d.get(h, [])
        if not cols or h + 1 not in fc.q:
            born[h] = set(range(len(fc.q[h])))
            continue
        rpos = pos[h + 1]
        ordered = [{rpos[r]: v for r, v in cols[i].items()} for i in order[h]]
        low, zero = reduce_columns(ordered)
        for jpos, rp in low.items():
            i = order[h][jpos]
            r = order[h + 1][rp]
            gap = fc.q[h + 1][r] - fc.q[h][i]
            if gap < 0 or gap % (2 * N):
                raise ComplexError("unexpected filtration gap")
            pairs.append((h, fc.q[h][i], gap))
            killed.setdefault(h + 1, set()).add(r)
        born[h] = {order[h][jpos] for jpos in zero}
    survivors = []
    for h, idxs in born.items():
        for i in sorted(idxs):
            if i not in killed.get(h, ()):
                survivors.append((h, fc.q[h][i]))
    return SpectralSequence(pairs, survivors, N, label)


def lee_gornik(c_generic) -> SpectralSequence:
    if isinstance(c_generic, GradedComplex) and not c_generic.spec.is_generic:
        raise ValueError("Lee-Gornik pages need the generic specialization")
    return _persistence(_as_field_complex(c_generic))


def s_invariant(c_generic) -> int:
    if isinstance(c_generic, GradedComplex) and c_generic.diagram.n_components() != 1:
        raise ValueError("s-invariant needs a knot")
    ss = lee_gornik(c_generic)
    qs = [q for h, q in ss.survivors if h == 0]
    if len(qs) != 2 or len(ss.survivors) != 2:
        raise ComplexError("a knot must have exactly two Lee generators in degree 0")
    return (max(qs) + min(qs)) // 2


# ---------------------------------------------------------------- the action

@dataclass
class ActionOperator:
    """Signed permutation G: basis element i of degree h -> sign * basis target."""
    target: Dict[int, List[int]]
    sign: Dict[int, List[int]]
    m: int

    def apply(self, h, vec):
        out = {}
        for i, x in vec.items():
            out[self.target[h][i]] = out.get(self.target[h][i], 0) + self.sign[h][i] * x
        return out

    def matrix(self, h):
        return [{self.target[h][i]: self.sign[h][i]} for i in range(len(self.target[h]))]


def action_operator(pd: PeriodicDiagram, c: GradedComplex, ad: ActionData,
                    verify: bool = True) -> ActionOperator:
    if c.diagram != pd.base:
        raise ValueError("complex is not built from the periodic diagram")
    ep = pd.edge_perm
    up = pd.unknot_perm

    def move(circ):
        return frozenset((ep[e - 1] if e > 0 else -(up[-e - 1] + 1)) for e in circ)

    lookup = [{circ: k for k, circ in enumerate(cs)} for cs in c.circles]
    target, sign = {}, {}
    for h, basis in c.basis.items():
        target[h], sign[h] = [], []
        for v, mask in basis:
            gv = ad.g_vertex(v)
            new = 0
            for k, circ in enumerate(c.circles[v]):
                if (mask >> k) & 1:
                    new |= 1 << lookup[gv][move(circ)]
            hh, idx = c.index[(gv, new)]
            if hh != h:
                raise ComplexError("action does not preserve homological degree")
            target[h].append(idx)
            sign[h].append(-1 if ad.sign_exponent(v) else 1)
    G = ActionOperator(target, sign, pd.m)
    if verify:
        verify_action(c, G)
    return G


def verify_action(c: GradedComplex, G: ActionOperator):
    for h, basis in c.basis.items():
        for i in range(len(basis)):
            if c.q[h][G.target[h][i]] != c.q[h][i]:
                raise ComplexError("action does not preserve q")
            vec = {i: 1}
            for _ in range(G.m):
                vec = G.apply(h, vec)
            if vec != {i: 1}:
                raise ComplexError("G^m is not the identity")
        if h + 1 not in c.basis:
            continue
        for i, col in enumerate(c.d[h]):
            lhs = G.apply(h + 1, col)
            rhs = c.d[h][G.target[h][i]]
            rhs = {r: G.sign[h][i] * v for r, v in rhs.items()}
            if {k: v for k, v in lhs.items() if v} != rhs:
                raise ComplexError("G does not commute with d")


# ---------------------------------------------------------------- eigenspaces

def xi_power(m, e):
    """xi_m^e as an exact field element (rational for m <= 2)."""
    if m == 1:
        return Fraction(1)
    if m == 2:
        return Fraction(-1 if e % 2 else 1)
    return CycElt.xi_power(m, e)


def _orbits(G: ActionOperator, h):
    seen = set()
    out = []
    for i in range(len(G.target[h])):
        if i in seen:
            continue
        elems, coeffs = [], []
        c, j = 1, i
        while True:
            elems.append(j)
            coeffs.append(c)
            seen.add(j)
            c *= G.sign[h][j]
            j = G.target[h][j]
            if j == i:
                break
        out.append((elems, coeffs, c))  # c = epsilon with G^k b0 = eps b0
    return out


def _admissible(m, k, eps, j):
    e = (j * k) % m
    return e == 0 if eps == 1 else 2 * e == m


def eigen_complex(c, G: ActionOperator, m: int, j: int) -> _FieldComplex:
    """The xi^j eigenspace of c, in the basis sum_l xi^{-jl} G^l b0 over orbits."""
    fc = _as_field_complex(c)
    q, where = {}, {}
    orbs = {}
    for h in fc.q:
        orbs[h] = [o for o in _orbits(G, h) if _admissible(m, len(o[0]), o[2], j)]
        q[h] = [fc.q[h][o[0][0]] for o in orbs[h]]
        where[h] = {o[0][0]: k for k, o in enumerate(orbs[h])}
    d = {}
    for h in fc.q:
        if h + 1 not in fc.q:
            continue
        cols = []
        for elems, coeffs, _ in orbs[h]:
            acc = {}
            for l, (b, cl) in enumerate(zip(elems, coeffs)):
                for r, val in fc.d[h][b].items():
                    k = where[h + 1].get(r)
                    if k is None:
                        continue
                    acc[k] = acc.get(k, 0) + xi_power(m, -j * l) * (cl * val)
            cols.append({k: v for k, v in acc.items() if v})
        d[h] = cols
    return _FieldComplex(q, d, m)


@dataclass
class EquivariantHomology:
    m: int
    per_j: Dict[int, BigradedDims]
    total: BigradedDims
    N: int = 2

    def order_of(self, j):
        return self.m // gcd(j, self.m)

    def d_part(self, d) -> BigradedDims:
        """Dimensions of one eigenspace of order d (all such agree)."""
        js = [j for j in range(self.m) if self.order_of(j) == d]
        if not js:
            raise ValueError(f"{d} does not divide {self.m}")
        ref = self._strip(self.per_j[js[0]])
        for j in js[1:]:
            if self._strip(self.per_j[j]) != ref:
                raise ComplexError("Galois conjugate eigenspaces disagree")
        return ref

    @staticmethod
    def _strip(bd):
        return BigradedDims({k[:2]: v for k, v in bd.dims.items()}, bd.N)

    def krp(self, d) -> BiPoly:
        return self.d_part(d).poincare()

    def decomposition_sum(self) -> BiPoly:
        out = BiPoly()
        for d in divisors(self.m):
            out = out + self.krp(d) * euler_phi(d)
        return out

    def to_json(self):
        dims = {}
        for j, bd in self.per_j.items():
            for k, v in bd.dims.items():
                dims[k[:2] + (j,)] = v
        return BigradedDims(dims, self.N, self.m).to_json()


def eigenspace_homology(c: GradedComplex, G: ActionOperator, m: int) -> EquivariantHomology:
    per_j = {}
    for j in range(m):
        per_j[j] = _block_homology(eigen_complex(c, G, m, j), label=j)
    total = homology_bigraded(c)
    summed = {}
    for bd in per_j.values():
        for k, v in bd.dims.items():
            summed[k[:2]] = summed.get(k[:2], 0) + v
    if summed != total.dims:
        raise ComplexError("eigenspace dimensions do not add up to the total")
    return EquivariantHomology(m, per_j, total)


def eigenspace_lee_gornik(c_generic: GradedComplex, G: ActionOperator, m: int):
    """Spectral sequences of each eigenspace of the generic complex, keyed by j."""
    return {j: _persistence(eigen_complex(c_generic, G, m, j), label=j) for j in range(m)}


def idempotent(G: ActionOperator, h, m, j):
    """e_j = (1/m) sum_k xi^{-jk} G^k on degree h, as sparse columns."""
    n = len(G.target[h])
    cols = []
    for i in range(n):
        acc = {}
        vec = {i: 1}
        for k in range(m):
            for r, x in vec.items():
                acc[r] = acc.get(r, 0) + xi_power(m, -j * k) * x / m
            vec = G.apply(h, vec)
        cols.append({r: v for r, v in acc.items() if v})
    return cols


@dataclass
class PeriodicComplexes:
    """Everything needed for equivariant work on one periodic diagram."""
    pd: PeriodicDiagram
    sign: SignAssignment
    ad: ActionData
    singular: GradedComplex
    G: ActionOperator
    generic: Optional[GradedComplex] = None
    G_generic: Optional[ActionOperator] = None


def periodic_complexes(pd: PeriodicDiagram, generic: bool = True, flip_t0: bool = False) -> PeriodicComplexes:
    from .cube import action_data
    s = standard_sign(pd.base)
    ad = action_data(pd, s, flip_t0=flip_t0)
    c = build_complex(pd.base, FrobeniusSpec.singular(), s)
    G = action_operator(pd, c, ad)
    out = PeriodicComplexes(pd, s, ad, c, G)
    if generic:
        out.generic = build_complex(pd.base, FrobeniusSpec.generic(), s)
        out.G_generic = action_operator(pd, out.generic, ad)
    return out
