"""Periodic structure on top of the N=2 complex.

Lee generators and their placement in eigenspaces, resolutions of a
crossing orbit up to rotation, the skein bicomplex with its induced-module
structure, the E1 page of the skein spectral sequence, difference
polynomials and the periodicity criterion.

Polynomials in q follow the skein normalization: RT(q) = KRP(-1, q^-1).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import gcd
from typing import Dict, List, Optional, Tuple

from .cube import ActionData, Cube, SignAssignment, action_data, standard_sign
from .cyclotomic import divisors, euler_phi
from .diagram import (Crossing, Diagram, DiagramError, PartialResolution, PeriodicDiagram,
                      linking_matrix, partial_resolution)
from .khcomplex import (ActionOperator, BigradedDims, ComplexError, EquivariantHomology,
                        FrobeniusSpec, GradedComplex, _FieldComplex, _block_homology,
                        action_operator, build_complex, eigen_complex, eigenspace_homology,
                        eigenspace_lee_gornik, homology_bigraded, periodic_complexes,
                        s_invariant)
from .linalg import matmul
from .polynomials import BiPoly, LaurentPoly
from .skeinpoly import (CongruenceReport, congruent_mod_gap, gap_poly, homfly, in_ideal, rt,
                        symmetry_defect)


def prime_power(m):
    """(p, ell) with m = p^ell, or None."""
    if m < 2:
        return None
    p = next(k for k in range(2, m + 1) if m % k == 0)
    ell, x = 0, m
    while x % p == 0:
        x //= p
        ell += 1
    return (p, ell) if x == 1 else None


def _perm_power(perm, r):
    out = list(range(len(perm)))
    for _ in range(r):
        out = [perm[i] for i in out]
    return tuple(out)


def _order_in(j, m):
    return m // gcd(j, m)


# ---------------------------------------------------------------- Lee generators

def lee_generators(d: Diagram, N: int = 2):
    """All colorings of components by 0..N-1 with the homological degree
    sum over ordered pairs of distinct colors of the linking numbers."""
    lk = linking_matrix(d)
    n = d.n_components()
    out = []
    for psi in itertools.product(range(N), repeat=n):
        deg = sum(lk[i][j] for i in range(n) for j in range(n) if psi[i] != psi[j])
        out.append((psi, deg))
    return out


def _coloring_orbit_order(psi, comp_perm):
    # (g psi)(perm[c]) = psi(c)
    cur, k = psi, 0
    while True:
        nxt = [None] * len(cur)
        for c, col in enumerate(cur):
            nxt[comp_perm[c]] = col
        cur, k = tuple(nxt), k + 1
        if cur == psi:
            return k


@dataclass
class LeeReport:
    m: int
    N: int
    colorings: List[dict]
    predicted: Dict[int, Dict[int, int]]      # d -> h -> dim of the whole d-part
    orbit_model: Dict[int, Dict[int, int]]
    computed: Optional[Dict[int, Dict[int, int]]] = None
    lee_polys: Optional[Dict[int, BiPoly]] = None  # d -> LeeP of one eigenspace of order d
    discrepancies: List[dict] = field(default_factory=list)

    @property
    def agrees_with_prediction(self):
        return None if self.computed is None else _norm(self.computed) == _norm(self.predicted)

    @property
    def agrees_with_orbit_model(self):
        return None if self.computed is None else _norm(self.computed) == _norm(self.orbit_model)

    def to_json(self):
        def table(t):
            return None if t is None else {str(d): {str(h): v for h, v in sorted(x.items())}
                                           for d, x in sorted(t.items())}
        return {
            "m": self.m,
            "N": self.N,
            "colorings": self.colorings,
            "predicted": table(self.predicted),
            "orbit_model": table(self.orbit_model),
            "computed": table(self.computed),
            "lee_polys": None if self.lee_polys is None else
            {str(d): p.to_json() for d, p in sorted(self.lee_polys.items())},
            "agrees_with_prediction": self.agrees_with_prediction,
            "agrees_with_orbit_model": self.agrees_with_orbit_model,
            "discrepancies": self.discrepancies,
        }


def _norm(t):
    return {d: {h: v for h, v in x.items() if v} for d, x in t.items() if any(x.values())}


def _bump(t, d, h, by=1):
    t.setdefault(d, {})
    t[d][h] = t[d].get(h, 0) + by


def equivariant_lee(pd: PeriodicDiagram, N: int = 2, pc=None) -> LeeReport:
    """Placement of Lee generators among the d-parts.

    predicted puts every coloring psi in the part of order o(psi), the
    size of its rotation orbit.  orbit_model spreads an orbit of size o
    as a permutation module, phi(d) dimensions for each d | o.  For N=2
    the placement is also computed from E_infinity of each eigenspace.
    """
    comp_perm = pd.component_perm()
    gens = lee_generators(pd.base, N)
    colorings, predicted, orbit_model = [], {}, {}
    seen = set()
    for psi, deg in gens:
        o = _coloring_orbit_order(psi, comp_perm)
        colorings.append({"coloring": list(psi), "degree": deg, "orbit_order": o})
        _bump(predicted, o, deg)
        if psi in seen:
            continue
        cur = psi
        for _ in range(o):
            seen.add(cur)
            nxt = [None] * len(cur)
            for c, col in enumerate(cur):
                nxt[comp_perm[c]] = col
            cur = tuple(nxt)
        for d in divisors(o):
            _bump(orbit_model, d, deg, euler_phi(d))
    report = LeeReport(pd.m, N, colorings, predicted, orbit_model)
    if N != 2:
        return report
    pc = pc or periodic_complexes(pd)
    pages = eigenspace_lee_gornik(pc.generic, pc.G_generic, pd.m)
    computed, polys = {}, {}
    for j, ss in pages.items():
        d = _order_in(j, pd.m)
        einf = ss.e_infinity()
        for key, v in einf.dims.items():
            _bump(computed, d, key[0], v)
        poly = BiPoly({k[:2]: v for k, v in einf.dims.items()})
        if d in polys and polys[d] != poly:
            raise ComplexError("conjugate eigenspaces have different Lee polynomials")
        polys[d] = poly
    report.computed = computed
    report.lee_polys = polys
    for name, model in (("predicted", predicted), ("orbit_model", orbit_model)):
        a, b = _norm(computed), _norm(model)
        for d in sorted(set(a) | set(b)):
            if a.get(d, {}) != b.get(d, {}):
                report.discrepancies.append({"model": name, "d": d, "model_dims": b.get(d, {}),
                                             "computed_dims": a.get(d, {})})
    return report


# ---------------------------------------------------------------- orbit resolutions

def crossing_orbit(pd: PeriodicDiagram, orbit) -> Tuple[int, ...]:
    """The orbit as a tuple x, g x, g^2 x, ... starting at its smallest crossing.

    orbit is an index into pd.crossing_orbits() or a collection of crossings.
    """
    orbits = pd.crossing_orbits()
    if isinstance(orbit, int):
        if not 0 <= orbit < len(orbits):
            raise DiagramError(f"no crossing orbit number {orbit}")
        return orbits[orbit]
    want = set(orbit)
    for o in orbits:
        if set(o) == want:
            return o
    raise DiagramError("the given crossings do not form an orbit")


@dataclass(frozen=True)
class OrbitResolutionClass:
    """A map from the orbit X to resolution values, up to rotation.

    values[l] is the value at crossing X[l] = g^l X[0]; the rotation sends
    values to (values[-1],) + values[:-1].
    """
    orbit: Tuple[int, ...]
    values: Tuple[int, ...]
    k: int
    d: int
    twist: int

    @property
    def m(self):
        return len(self.orbit)

    @property
    def orbit_size(self):
        return self.m // self.d

    def assignment(self, values=None):
        return dict(zip(self.orbit, values or self.values))

    def members(self):
        out, cur = [], self.values
        for _ in range(self.orbit_size):
            out.append(cur)
            cur = (cur[-1],) + cur[:-1]
        return out

    def to_json(self):
        return {"orbit": list(self.orbit), "values": list(self.values), "k": self.k,
                "d": self.d, "twist": self.twist}


def _rotations(values):
    return [values[-r:] + values[:-r] if r else values for r in range(len(values))]


def _vertex_of(pd, assignment, rest_zero=False):
    """Vertex with the given values; other crossings at their smallest
    value, or at value 0 when rest_zero is set."""
    d = pd.base
    v = 0
    for i, c in enumerate(d.crossings):
        x = assignment.get(i, 0 if rest_zero else c.min_value())
        v |= (x - c.min_value()) << i
    return v


def orbit_resolutions(pd: PeriodicDiagram, orbit=0, ad: Optional[ActionData] = None):
    """Classes of maps X -> values modulo rotation with degree, isotropy and twist.

    The twist is the sum of t over g^r I0, r < m/d, where I0 extends the
    map by the value 0 outside X.
    """
    X = crossing_orbit(pd, orbit)
    signs = {pd.base.crossings[i].sign for i in X}
    if len(signs) != 1:
        raise DiagramError("the orbit mixes crossing signs")
    ad = ad or action_data(pd)
    vals = pd.base.crossings[X[0]].values()
    m = len(X)
    classes = []
    seen = set()
    for values in itertools.product(vals, repeat=m):
        if values in seen:
            continue
        rots = _rotations(values)
        seen.update(rots)
        period = next(r for r in range(1, m + 1) if rots[r % m] == values)
        d = m // period
        rep = min(rots)
        v = _vertex_of(pd, dict(zip(X, rep)), rest_zero=True)
        twist = 0
        for _ in range(period):
            twist ^= ad.t(v)
            v = ad.g_vertex(v)
        classes.append(OrbitResolutionClass(X, rep, sum(rep), d, twist))
    classes.sort(key=lambda c: (c.k, c.values))
    return classes


def grouped_classes(classes):
    """{(k, d): [classes]}, the sets written A-bar_k^d."""
    out = {}
    for c in classes:
        out.setdefault((c.k, c.d), []).append(c)
    return out


def restricted_action(pd: PeriodicDiagram, pr: PartialResolution, power: int, order: int):
    """g^power acting on a partial resolution it preserves, as a periodic diagram of period order."""
    cp = _perm_power(pd.crossing_perm, power)
    ep = _perm_power(tuple(e - 1 for e in pd.edge_perm), power)
    up = _perm_power(pd.unknot_perm, power)
    pos = {old: a for a, old in enumerate(pr.kept)}
    try:
        new_cp = tuple(pos[cp[old]] for old in pr.kept)
    except KeyError:
        raise DiagramError("the rotation does not preserve the smoothed crossings") from None
    d = pr.diagram
    new_ep = [None] * d.n_edges
    new_up = [None] * d.unknots
    moves = [(pr.edge_map[e], pr.edge_map[ep[e - 1] + 1]) for e in range(1, pd.base.n_edges + 1)]
    moves += [(-(i + 1), -(up[i] + 1)) for i in range(pd.base.unknots)]
    for src, dst in moves:
        if (src > 0) != (dst > 0):
            raise DiagramError("the rotation mixes edges and crossingless circles")
        table, k, val = (new_ep, src - 1, dst) if src > 0 else (new_up, -src - 1, -dst - 1)
        if table[k] is not None and table[k] != val:
            raise DiagramError("the rotation is not compatible with the smoothing")
        table[k] = val
    return PeriodicDiagram(d, order, new_cp, tuple(new_ep), tuple(new_up))


# ---------------------------------------------------------------- skein bicomplex

@dataclass
class Column:
    """The partial resolution D_I of one map I: X -> values, with the
    sign assignment restricted from D and its place in the full complex."""
    values: Tuple[int, ...]
    k: int
    partial: PartialResolution
    sign: SignAssignment
    complex: GradedComplex
    shift: Tuple[int, int]
    embed: Dict[Tuple[int, int], Tuple[int, int]]


class SkeinBicomplex:
    """M(D, X) for an orbit X of a periodic diagram, over the singular N=2 theory.

    The column of I is the complex of D_I with sign s_I(J, J') = s(I v J, I v J');
    the rows of the bicomplex are the maps along X.
    """

    def __init__(self, pd: PeriodicDiagram, orbit=0, s: Optional[SignAssignment] = None):
        self.pd = pd
        self.X = crossing_orbit(pd, orbit)
        if len({pd.base.crossings[i].sign for i in self.X}) != 1:
            raise DiagramError("the orbit mixes crossing signs")
        self.m = len(self.X)
        self.s = s or standard_sign(pd.base)
        self.full = build_complex(pd.base, FrobeniusSpec.singular(), self.s)
        self.ad = action_data(pd, self.s)
        self.G = action_operator(pd, self.full, self.ad)
        self.classes = orbit_resolutions(pd, self.X, self.ad)
        self.columns: Dict[Tuple[int, ...], Column] = {}
        self.where: Dict[Tuple[int, int], Tuple[Tuple[int, ...], Tuple[int, int]]] = {}
        vals = pd.base.crossings[self.X[0]].values()
        for values in itertools.product(vals, repeat=self.m):
            self._add_column(values)
        if len(self.where) != self.full.dim():
            raise ComplexError("columns do not cover the full complex")
        self._check_internal()
        self._H = {}

    # columns

    def _add_column(self, values):
        pd, c = self.pd, self.full
        assign = dict(zip(self.X, values))
        pr = partial_resolution(pd.base, assign)
        base_v = _vertex_of(pd, assign)
        kept = pr.kept

        def embed_v(w):
            v = base_v
            for a, old in enumerate(kept):
                if (w >> a) & 1:
                    v |= 1 << old
            return v

        cube = Cube.of(pr.diagram)
        s_col = SignAssignment.from_function(cube, lambda w, a: self.s(embed_v(w), kept[a]))
        col = build_complex(pr.diagram, FrobeniusSpec.singular(), s_col)
        k = sum(values)
        sq = sum(x + pd.base.crossings[i].sign for i, x in assign.items())
        embed = {}
        for w in range(cube.size):
            v = embed_v(w)
            lookup = {circ: j for j, circ in enumerate(col.circles[w])}
            to_col = [lookup.get(pr.image(circ)) for circ in c.circles[v]]
            if None in to_col or len(to_col) != len(col.circles[w]):
                raise ComplexError("circles of the partial resolution do not match")
            for mask in range(1 << len(to_col)):
                cmask = 0
                for j, jj in enumerate(to_col):
                    if (mask >> j) & 1:
                        cmask |= 1 << jj
                hc, ic = col.index[(w, cmask)]
                h, i = c.index[(v, mask)]
                if h != hc + k or c.q[h][i] != col.q[hc][ic] + sq:
                    raise ComplexError("column shift does not match the full grading")
                embed[(hc, ic)] = (h, i)
                if (h, i) in self.where:
                    raise ComplexError("columns overlap")
                self.where[(h, i)] = (values, (hc, ic))
        self.columns[values] = Column(values, k, pr, s_col, col, (k, sq), embed)

    def _internal_part(self, h, i):
        values = self.where[(h, i)][0]
        return {r: v for r, v in self.full.d[h][i].items() if self.where[(h + 1, r)][0] == values}

    def _check_internal(self):
        for values, col in self.columns.items():
            for (hc, ic), (h, i) in col.embed.items():
                if h not in self.full.d or h + 1 not in self.full.basis:
                    continue
                image = {}
                for r, v in col.complex.d.get(hc, [{}] * (ic + 1))[ic].items():
                    image[col.embed[(hc + 1, r)][1]] = v
                if image != self._internal_part(h, i):
                    raise ComplexError(f"column differential differs from D at resolution {values}")

    # totalization

    def totalization(self) -> _FieldComplex:
        """Total complex of the bicomplex in the column basis."""
        order = {}
        q = {}
        for values in sorted(self.columns):
            col = self.columns[values]
            for hc in sorted(col.complex.basis):
                for ic in range(len(col.complex.basis[hc])):
                    h = hc + col.k
                    order[(values, (hc, ic))] = (h, len(q.setdefault(h, [])))
                    q[h].append(col.complex.q[hc][ic] + col.shift[1])
        d = {h: [dict() for _ in q[h]] for h in q}
        for values, col in self.columns.items():
            for (hc, ic), (h, i) in col.embed.items():
                th, ti = order[(values, (hc, ic))]
                out = d[th][ti]
                for r, v in (col.complex.d.get(hc) or [{}] * (ic + 1))[ic].items():
                    out[order[(values, (hc + 1, r))][1]] = v
                for r, v in self.full.d.get(h, [{}] * (i + 1))[i].items():
                    tgt = self.where[(h + 1, r)]
                    if tgt[0] != values:
                        out[order[tgt][1]] = out.get(order[tgt][1], 0) + v
        return _FieldComplex(q, d)

    def verify_totalization(self) -> BigradedDims:
        tot = self.totalization()
        for h in tot.d:
            if h + 1 in tot.d and h + 2 in tot.q:
                if any(matmul(tot.d[h + 1], tot.d[h])):
                    raise ComplexError(f"total differential squares to nonzero in degree {h}")
        got = _block_homology(tot)
        want = homology_bigraded(self.full)
        if got != want:
            raise ComplexError("homology of the totalization differs from the diagram's")
        return got

    # equivariant structure

    def column_action(self, cls: OrbitResolutionClass):
        """(periodic D_I, H) for the isotropy Z_d of a class, or None when d = 1."""
        if cls.d == 1:
            return None
        if cls.values not in self._H:
            col = self.columns[cls.values]
            pdi = restricted_action(self.pd, col.partial, self.m // cls.d, cls.d)
            adi = action_data(pdi, col.sign)
            self._H[cls.values] = (pdi, action_operator(pdi, col.complex, adi))
        return self._H[cls.values]

    def _G_power(self, h, i, r):
        vec = {i: 1}
        for _ in range(r):
            vec = self.G.apply(h, vec)
        (j, sgn), = vec.items()
        return j, sgn

    def verify_twists(self):
        """G^(m/d) on the column of a class equals (-1)^twist H."""
        for cls in self.classes:
            if cls.twist and cls.d % 2:
                raise ComplexError(f"odd isotropy with a nonzero twist at {cls.values}")
            col = self.columns[cls.values]
            act = self.column_action(cls)
            for (hc, ic), (h, i) in col.embed.items():
                j, sgn = self._G_power(h, i, cls.orbit_size)
                if act is None:
                    tj, tsgn = ic, 1
                else:
                    H = act[1]
                    tj, tsgn = H.target[hc][ic], H.sign[hc][ic]
                tsgn *= -1 if cls.twist else 1
                if (h, j) != col.embed[(hc, tj)] or sgn != tsgn:
                    raise ComplexError(f"twisted isotropy action fails on the column {cls.values}")

    def induced_model(self):
        """The complex rebuilt as a sum of induced modules.

        Basis (class, r, y) stands for G^r of the element y of the class's
        column; the generator shifts r and, at the end of the orbit, acts by
        (-1)^twist H.  The differential is transported from D.
        """
        m = self.m
        key_of, phi, q = {}, {}, {}
        for ci, cls in enumerate(self.classes):
            col = self.columns[cls.values]
            for r in range(cls.orbit_size):
                for (hc, ic), (h, i) in sorted(col.embed.items()):
                    j, sgn = self._G_power(h, i, r)
                    idx = len(q.setdefault(h, []))
                    q[h].append(self.full.q[h][j])
                    key_of[(h, idx)] = (ci, r, hc, ic)
                    if (h, j) in phi:
                        raise ComplexError("the induced modules overlap")
                    phi[(h, j)] = (idx, sgn)
        if len(phi) != self.full.dim():
            raise ComplexError("the induced modules do not fill the complex")
        index = {v: k for k, v in key_of.items()}
        back = {}
        for (h, j), (idx, sgn) in phi.items():
            back[(h, idx)] = (j, sgn)
        d = {}
        for h in q:
            if h + 1 not in q:
                continue
            cols = []
            for idx in range(len(q[h])):
                j, sgn = back[(h, idx)]
                out = {}
                for r, v in self.full.d[h][j].items():
                    ridx, rsgn = phi[(h + 1, r)]
                    out[ridx] = out.get(ridx, 0) + sgn * rsgn * v
                cols.append({k: v for k, v in out.items() if v})
            d[h] = cols
        target = {h: [None] * len(q[h]) for h in q}
        sign = {h: [None] * len(q[h]) for h in q}
        for (h, idx), (ci, r, hc, ic) in key_of.items():
            cls = self.classes[ci]
            if r + 1 < cls.orbit_size:
                target[h][idx] = index[(ci, r + 1, hc, ic)][1]
                sign[h][idx] = 1
            else:
                act = self.column_action(cls)
                if act is None:
                    tj, tsgn = ic, 1
                else:
                    tj, tsgn = act[1].target[hc][ic], act[1].sign[hc][ic]
                target[h][idx] = index[(ci, 0, hc, tj)][1]
                sign[h][idx] = -tsgn if cls.twist else tsgn
        gm = ActionOperator(target, sign, m)
        # the model's generator must be G transported
        for (h, idx) in key_of:
            j, sgn = back[(h, idx)]
            gj, gs = self.G.target[h][j], self.G.sign[h][j]
            tidx, tsg = phi[(h, gj)]
            if target[h][idx] != tidx or sign[h][idx] != sgn * gs * tsg:
                raise ComplexError("the induced-module action is not the rotation")
        return _FieldComplex(q, d, m), gm

    def verify_equivariant(self):
        """Eigenspace dims of the induced model against those of D."""
        self.verify_twists()
        fc, gm = self.induced_model()
        _check_commutes(fc, gm)
        got = eigenspace_homology(fc, gm, self.m)
        want = eigenspace_homology(self.full, self.G, self.m)
        for j in range(self.m):
            if got.per_j[j] != want.per_j[j]:
                raise ComplexError(f"eigenspace {j} of the induced model differs")
        return got

    # E1 page of the skein spectral sequence

    def direct_e1(self, part: int):
        """Dims of the part of order `part` of the homology of each column
        under the internal differential, keyed (k, h, q); whole part, all j."""
        full = self.full
        out = {}
        by_k = {}
        for (h, i), (values, _) in self.where.items():
            by_k.setdefault(sum(values), []).append((h, i))
        for k, elems in by_k.items():
            local = {}
            q = {}
            for h, i in sorted(elems):
                local[(h, i)] = len(q.setdefault(h, []))
                q[h].append(full.q[h][i])
            d = {}
            for h in q:
                if h + 1 not in q:
                    continue
                cols = [None] * len(q[h])
                for (hh, i), li in local.items():
                    if hh == h:
                        cols[li] = {local[(h + 1, r)]: v for r, v in self._internal_part(h, i).items()}
                d[h] = cols
            target = {h: [None] * len(q[h]) for h in q}
            sign = {h: [None] * len(q[h]) for h in q}
            for (h, i), li in local.items():
                target[h][li] = local[(h, self.G.target[h][i])]
                sign[h][li] = self.G.sign[h][i]
            fc = _FieldComplex(q, d, self.m)
            g = ActionOperator(target, sign, self.m)
            for j in range(self.m):
                if _order_in(j, self.m) != part:
                    continue
                for key, v in _block_homology(eigen_complex(fc, g, self.m, j)).dims.items():
                    kk = (k,) + key[:2]
                    out[kk] = out.get(kk, 0) + v
        return {k: v for k, v in out.items() if v}

    def column_homology(self, cls: OrbitResolutionClass):
        """Per effective eigen-index e of Z_d: dims of the column's homology, shifted.

        e is the index of the eigenvalue of G^(m/d) = (-1)^twist H.
        """
        col = self.columns[cls.values]
        act = self.column_action(cls)
        out = {}
        if act is None:
            parts = {0: homology_bigraded(col.complex)}
        else:
            eq = eigenspace_homology(col.complex, act[1], cls.d)
            parts = {(j + (cls.d // 2 if cls.twist else 0)) % cls.d: bd for j, bd in eq.per_j.items()}
        for e, bd in parts.items():
            out[e] = {(cls.k, key[0] + col.shift[0], key[1] + col.shift[1]): v for key, v in bd.dims.items()}
        return out

    def nonequivariant_e1(self):
        out = {}
        for values, col in self.columns.items():
            for key, v in homology_bigraded(col.complex).dims.items():
                kk = (col.k, key[0] + col.shift[0], key[1] + col.shift[1])
                out[kk] = out.get(kk, 0) + v
        return out


def _check_commutes(fc: _FieldComplex, G: ActionOperator):
    for h, cols in fc.d.items():
        for i, col in enumerate(cols):
            lhs = G.apply(h + 1, col)
            rhs = {r: G.sign[h][i] * v for r, v in fc.d[h][G.target[h][i]].items()}
            if {k: v for k, v in lhs.items() if v} != rhs:
                raise ComplexError("the generator does not commute with the differential")


@dataclass
class BicomplexReport:
    orbit: Tuple[int, ...]
    classes: List[OrbitResolutionClass]
    homology: BigradedDims
    equivariant: Optional[EquivariantHomology] = None

    def to_json(self):
        return {
            "orbit": list(self.orbit),
            "classes": [c.to_json() for c in self.classes],
            "homology": self.homology.to_json(),
            "equivariant": None if self.equivariant is None else self.equivariant.to_json(),
        }


def skein_bicomplex(pd: PeriodicDiagram, orbit=0, s: Optional[SignAssignment] = None,
                    equivariant: bool = True) -> BicomplexReport:
    """Build M(D, X), check it totalizes to the complex of D and, in equivariant
    mode, that the induced modules with twists carry the rotation."""
    bc = SkeinBicomplex(pd, orbit, s)
    hom = bc.verify_totalization()
    eq = bc.verify_equivariant() if equivariant else None
    return BicomplexReport(bc.X, bc.classes, hom, eq)


def kappa(p, ell, u, s):
    return 1 if u >= s else p ** (s - u)


def lam(p, ell, u, s):
    return euler_phi(p ** (ell - u)) if u >= s else p ** (ell - s)


@dataclass
class E1Report:
    u: int
    p: int
    ell: int
    part: int
    predicted: Dict[Tuple[int, int, int], int]
    computed: Dict[Tuple[int, int, int], int]
    euler_e1: LaurentPoly
    euler_homology: LaurentPoly

    @property
    def agree(self):
        return self.predicted == self.computed

    @property
    def euler_agree(self):
        return self.euler_e1 == self.euler_homology

    def mismatches(self):
        keys = set(self.predicted) | set(self.computed)
        return sorted((k, self.predicted.get(k, 0), self.computed.get(k, 0)) for k in keys
                      if self.predicted.get(k, 0) != self.computed.get(k, 0))

    def to_json(self):
        def rows(t):
            return [{"k": k, "h": h, "q": q, "dim": v} for (k, h, q), v in sorted(t.items())]
        return {
            "u": self.u, "p": self.p, "ell": self.ell, "part": self.part,
            "predicted": rows(self.predicted), "computed": rows(self.computed),
            "agree": self.agree,
            "mismatches": [{"key": list(k), "predicted": a, "computed": b} for k, a, b in self.mismatches()],
            "euler_e1": self.euler_e1.to_text(), "euler_homology": self.euler_homology.to_text(),
            "euler_agree": self.euler_agree,
        }


def _euler(dims, hpos=0):
    out = {}
    for key, v in dims.items():
        h, q = key[hpos], key[hpos + 1]
        out[q] = out.get(q, 0) + (-1) ** (h % 2) * v
    return LaurentPoly(out)


def e1_page(pd: PeriodicDiagram, orbit=0, u: int = 0, bc: Optional[SkeinBicomplex] = None) -> E1Report:
    """Predicted and directly computed dimensions of the E1 page for the part
    of order p^(ell-u).  Dimensions count the whole part (all eigenvalues of
    that order); keys are (k, h, q) with h, q the gradings in D."""
    pp = prime_power(pd.m)
    if pp is None:
        raise ValueError("the period must be a prime power")
    p, ell = pp
    if not 0 <= u <= ell:
        raise ValueError("u must lie between 0 and ell")
    bc = bc or SkeinBicomplex(pd, orbit)
    part = p ** (ell - u)
    predicted = {}
    for cls in bc.classes:
        s = 0
        while p ** s < cls.d:
            s += 1
        kap, mult = kappa(p, ell, u, s), lam(p, ell, u, s)
        for e, dims in bc.column_homology(cls).items():
            if _order_in(e, cls.d) != kap:
                continue
            for key, v in dims.items():
                predicted[key] = predicted.get(key, 0) + mult * v
    predicted = {k: v for k, v in predicted.items() if v}
    computed = bc.direct_e1(part)
    eq = eigenspace_homology(bc.full, bc.G, bc.m)
    hom = {}
    for j, bd in eq.per_j.items():
        if _order_in(j, bc.m) == part:
            for key, v in bd.dims.items():
                hom[key[:2]] = hom.get(key[:2], 0) + v
    return E1Report(u, p, ell, part, predicted, computed, _euler(computed, 1), _euler(hom))


# ---------------------------------------------------------------- difference polynomials

def rt_part(eq: EquivariantHomology, d: int) -> LaurentPoly:
    """KRP_{2,d}(-1, q^-1): one eigenspace of order d, unreduced."""
    return eq.krp(d).at_t(-1).bar()


@dataclass
class DifferenceSet:
    p: int
    ell: int
    N: int
    rt: Dict[int, LaurentPoly]   # j -> RT_{N, p^j}
    dp: Dict[int, LaurentPoly]
    normalization: str = "unreduced"

    def telescoped(self):
        total = LaurentPoly()
        for x in self.dp.values():
            total = total + x
        return total

    def check_telescoping(self):
        return self.telescoped() == self.rt[0]

    def to_json(self):
        return {
            "p": self.p, "ell": self.ell, "N": self.N, "normalization": self.normalization,
            "rt": {str(j): x.to_text() for j, x in sorted(self.rt.items())},
            "dp": {str(j): x.to_text() for j, x in sorted(self.dp.items())},
            "telescoping": self.check_telescoping(),
        }


def difference_polys(source, p: Optional[int] = None, ell: Optional[int] = None) -> DifferenceSet:
    """DP_{2,j} = RT_{2,p^j} - RT_{2,p^(j+1)} for j < ell and DP_{2,ell} = RT_{2,p^ell}.

    source is a PeriodicDiagram or its EquivariantHomology.
    """
    if isinstance(source, PeriodicDiagram):
        pc = periodic_complexes(source, generic=False)
        source = eigenspace_homology(pc.singular, pc.G, source.m)
    eq = source
    pp = prime_power(eq.m)
    if pp is None:
        raise ValueError("the period must be a prime power")
    if p is not None and (p, ell) != pp:
        raise ValueError(f"period {eq.m} is not {p}^{ell}")
    p, ell = pp
    rts = {j: rt_part(eq, p ** j) for j in range(ell + 1)}
    dps = {j: rts[j] - rts[j + 1] for j in range(ell)}
    dps[ell] = rts[ell]
    return DifferenceSet(p, ell, 2, rts, dps)


def switch_orbit(pd: PeriodicDiagram, orbit=0) -> PeriodicDiagram:
    X = crossing_orbit(pd, orbit)
    crossings = list(pd.base.crossings)
    for i in X:
        a, b, c, d = crossings[i].quad
        crossings[i] = (Crossing((d, a, b, c), -1) if crossings[i].sign > 0
                        else Crossing((b, c, d, a), 1))
    base = Diagram(tuple(crossings), pd.base.n_edges, pd.base.unknots)
    return PeriodicDiagram(base, pd.m, pd.crossing_perm, pd.edge_perm, pd.unknot_perm)


def smooth_orbit(pd: PeriodicDiagram, orbit=0) -> PeriodicDiagram:
    """Oriented smoothing of every crossing in the orbit."""
    X = crossing_orbit(pd, orbit)
    pr = partial_resolution(pd.base, {i: 0 for i in X})
    rd = pr.diagram
    oriented = Diagram(rd.crossings, rd.n_edges, rd.unknots)
    pr = PartialResolution(oriented, pr.kept, pr.edge_map)
    return restricted_action(pd, pr, 1, pd.m)


def orbit_change_triple(pd: PeriodicDiagram, orbit=0):
    """(L+, L-, L0) differing along one orbit."""
    X = crossing_orbit(pd, orbit)
    other = switch_orbit(pd, X)
    plus, minus = (pd, other) if pd.base.crossings[X[0]].sign > 0 else (other, pd)
    return plus, minus, smooth_orbit(pd, X)


@dataclass
class JonesReport:
    m: int
    p: int
    ell: int
    item1: Dict[str, bool]                  # "q^-m - q^m" / "q^m - q^-m" -> holds
    item2: Dict[str, Dict[int, bool]]       # sign -> j -> congruence holds
    residues: Dict[str, Dict[int, LaurentPoly]]

    def to_json(self):
        return {
            "m": self.m, "p": self.p, "ell": self.ell,
            "item1": self.item1,
            "item2": {s: {str(j): v for j, v in x.items()} for s, x in self.item2.items()},
            "residues": {s: {str(j): v.to_text() for j, v in x.items()} for s, x in self.residues.items()},
        }


_SIGNS = {"q^-m - q^m": -1, "q^m - q^-m": 1}


def jones_relations(plus: DifferenceSet, minus: DifferenceSet, zero: DifferenceSet, m: int,
                    N: int = 2) -> JonesReport:
    """Both relations for an orbit-change triple, with either sign of the right side."""
    p, ell = plus.p, plus.ell
    qp, qm = LaurentPoly.monomial(m * N), LaurentPoly.monomial(-m * N)
    item1, item2, residues = {}, {}, {}
    for name, sg in _SIGNS.items():
        factor = gap_poly(m) * sg

        def residue(j):
            return qp * plus.dp[j] - qm * minus.dp[j] - factor * zero.dp[j]

        item1[name] = residue(0).is_zero()
        item2[name], residues[name] = {}, {}
        for j in range(ell):
            r = residue(ell - j)
            residues[name][ell - j] = r
            item2[name][j] = congruent_mod_gap(r, p ** j)
        residues[name][0] = residue(0)
    return JonesReport(m, p, ell, item1, item2, residues)


# ---------------------------------------------------------------- periodicity criterion

@dataclass
class CriterionReport:
    mode: str
    prime: int
    ell: int
    N: int
    verdicts: Dict[str, bool]
    witnesses: Dict[str, object] = field(default_factory=dict)
    congruence: Optional[CongruenceReport] = None
    residues: Dict[str, str] = field(default_factory=dict)
    warnings: List[str] = field(default_factory=list)
    normalization: str = "unreduced"

    @property
    def passed(self):
        return all(self.verdicts.values())

    def verdict_text(self):
        if self.mode == "obstruction":
            return "PASS (no obstruction)" if self.passed else "FAIL (obstructed)"
        return "PASS" if self.passed else "FAIL"

    def verify(self) -> bool:
        """Recheck every asserted identity from the stored witnesses."""
        if self.mode == "obstruction":
            return self.congruence is not None and self.congruence.verify() and \
                self.congruence.member == self.passed
        w = self.witnesses
        P = {int(j): BiPoly.from_json(x) for j, x in w["P"].items()}
        S = {int(j): {int(k): BiPoly.from_json(x) for k, x in row.items()} for j, row in w["S"].items()}
        s = w["s"]
        p, ell = self.prime, self.ell
        krp = BiPoly.from_json(w["KRP"])
        total = P[0]
        for j in range(1, ell + 1):
            total = total + P[j] * (p ** j - p ** (j - 1))
        ok = total == krp
        lee = BiPoly({(0, s - 1): 1, (0, s + 1): 1})
        for j in range(ell + 1):
            rebuilt = lee if j == 0 else BiPoly()
            for k, x in S[j].items():
                rebuilt = rebuilt + (BiPoly.const(1) + BiPoly.monomial(1, 4 * k)) * x
                ok = ok and x.nonnegative()
            ok = ok and rebuilt == P[j]
        for j, r in _p3_residues(P, p, ell).items():
            ok = ok and congruent_mod_gap(r, p ** (ell - j)) == self.verdicts[f"P-3[{j}]"]
        return ok

    def to_json(self):
        return {
            "mode": self.mode,
            "prime": self.prime,
            "ell": self.ell,
            "N": self.N,
            "normalization": self.normalization,
            "verdict": self.verdict_text(),
            "passed": self.passed,
            "verdicts": self.verdicts,
            "witnesses": self.witnesses,
            "congruence": None if self.congruence is None else self.congruence.to_json(),
            "residues": self.residues,
            "warnings": self.warnings,
        }


def _vacuous_warning(p, ell):
    if p ** ell in (3, 4):
        return [f"the criterion cannot obstruct period {p ** ell}: every knot satisfies the congruence"]
    return []


def check_obstruction(knot: Diagram, N: int, p: int, ell: int, rt_poly: Optional[LaurentPoly] = None) -> CriterionReport:
    """RT_N(q) - RT_N(q^-1) in I_{p^ell}; failure rules out period p^ell."""
    if knot.n_components() != 1:
        raise ValueError("the obstruction applies to knots")
    if prime_power(p) != (p, 1):
        raise ValueError(f"{p} is not prime")
    poly = rt_poly if rt_poly is not None else rt(homfly(knot), N)
    cong = in_ideal(symmetry_defect(poly), p, ell)
    report = CriterionReport("obstruction", p, ell, N, {"ideal": cong.member}, congruence=cong,
                             warnings=_vacuous_warning(p, ell))
    report.witnesses["rt"] = poly.to_text()
    if not cong.member:
        report.residues["ideal"] = cong.failing_residue.to_text()
    return report


def _p3_residues(P, p, ell):
    out = {}
    for j in range(ell + 1):
        nxt = P.get(j + 1, BiPoly())
        x = (P[j] - nxt).at_t(-1)
        out[j] = symmetry_defect(x)
    return out


def check_verification(pd: PeriodicDiagram, pc=None) -> CriterionReport:
    """P-1..P-3 for a periodic knot diagram of prime power period, N = 2."""
    pp = prime_power(pd.m)
    if pp is None:
        raise ValueError("the period must be a prime power")
    if pd.base.n_components() != 1:
        raise ValueError("verification mode needs a knot")
    p, ell = pp
    pc = pc or periodic_complexes(pd)
    eq = eigenspace_homology(pc.singular, pc.G, pd.m)
    pages = eigenspace_lee_gornik(pc.generic, pc.G_generic, pd.m)
    s = s_invariant(pc.generic)
    P, S, lee = {}, {}, {}
    for j in range(ell + 1):
        d = p ** j
        P[j] = eq.krp(d)
        js = [i for i in range(pd.m) if _order_in(i, pd.m) == d]
        ss = pages[js[0]]
        for other in js[1:]:
            if pages[other].r_polys() != ss.r_polys():
                raise ComplexError("conjugate eigenspaces have different pages")
        S[j] = ss.r_polys()
        lee[j] = ss.lee_poly()
    krp = homology_bigraded(pc.singular).poincare()
    verdicts = {}
    expected_lee = BiPoly({(0, s - 1): 1, (0, s + 1): 1})
    for j in range(ell + 1):
        rebuilt = lee[j]
        for k, x in S[j].items():
            rebuilt = rebuilt + (BiPoly.const(1) + BiPoly.monomial(1, 4 * k)) * x
        target_lee = expected_lee if j == 0 else BiPoly()
        verdicts[f"P-1[{j}]"] = rebuilt == P[j] and lee[j] == target_lee
        verdicts[f"P-2[{j}]"] = all(x.nonnegative() for x in S[j].values())
    total = P[0]
    for j in range(1, ell + 1):
        total = total + P[j] * (p ** j - p ** (j - 1))
    verdicts["decomposition"] = total == krp
    residues = {}
    for j, r in _p3_residues(P, p, ell).items():
        ok = congruent_mod_gap(r, p ** (ell - j))
        verdicts[f"P-3[{j}]"] = ok
        if not ok:
            residues[f"P-3[{j}]"] = r.to_text()
    witnesses = {
        "s": s,
        "KRP": krp.to_json(),
        "P": {str(j): x.to_json() for j, x in P.items()},
        "S": {str(j): {str(k): x.to_json() for k, x in row.items()} for j, row in S.items()},
        "lee": {str(j): x.to_json() for j, x in lee.items()},
    }
    return CriterionReport("verification", p, ell, 2, verdicts, witnesses, residues=residues)


def check_periodicity(source, p: Optional[int] = None, ell: Optional[int] = None, N: int = 2) -> CriterionReport:
    """Obstruction mode for a plain knot diagram, verification mode for a periodic one."""
    if isinstance(source, PeriodicDiagram):
        return check_verification(source)
    if p is None or ell is None:
        raise ValueError("obstruction mode needs p and ell")
    return check_obstruction(source, N, p, ell)
