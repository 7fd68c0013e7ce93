"""Oriented link diagrams in PD notation and their periodic versions.

A crossing X[a,b,c,d] lists its four edge labels counterclockwise,
starting with the incoming under-strand, so the under-strand runs a -> c.
The over-strand runs d -> b at a positive crossing and b -> d at a
negative one.  Resolution values live in {0,1} (positive) or {-1,0}
(negative); the smaller value always selects the pairing (a,b)(c,d),
the larger one the pairing (a,d)(b,c).  Value 0 is therefore the oriented
smoothing at both kinds of crossing.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple


class DiagramError(ValueError):
    """Invalid PD input or an inconsistent diagram."""


@dataclass(frozen=True)
class Crossing:
    quad: Tuple[int, int, int, int]
    sign: int

    def head_slots(self):
        """Slots where an edge enters the crossing."""
        return (0, 3) if self.sign > 0 else (0, 1)

    def min_value(self):
        return 0 if self.sign > 0 else -1

    def values(self):
        return (0, 1) if self.sign > 0 else (-1, 0)

    def token(self):
        return "X[%d,%d,%d,%d]" % self.quad


@dataclass(frozen=True)
class Smoothing:
    circles: Tuple[frozenset, ...]

    @property
    def circle_count(self):
        return len(self.circles)


@dataclass(frozen=True)
class Diagram:
    crossings: Tuple[Crossing, ...]
    n_edges: int
    unknots: int = 0
    # False for partial resolutions, whose smoothings need not respect orientation
    oriented: bool = True

    def __post_init__(self):
        object.__setattr__(self, "crossings", tuple(self.crossings))
        _validate(self)

    # basic data
    @property
    def n_crossings(self):
        return len(self.crossings)

    @property
    def signs(self):
        return tuple(c.sign for c in self.crossings)

    @property
    def writhe(self):
        return sum(self.signs)

    def n_positive(self):
        return sum(1 for s in self.signs if s > 0)

    def n_negative(self):
        return sum(1 for s in self.signs if s < 0)

    def edge_heads(self):
        """edge -> (crossing index, slot) where the edge ends."""
        heads = {}
        for i, c in enumerate(self.crossings):
            for s in c.head_slots():
                heads[c.quad[s]] = (i, s)
        return heads

    def next_edge(self, e, heads=None):
        heads = heads or self.edge_heads()
        i, s = heads[e]
        return self.crossings[i].quad[(s + 2) % 4]

    def edge_components(self):
        """Closed components through crossings, as tuples of edges in order."""
        heads = self.edge_heads()
        seen = set()
        comps = []
        for e in range(1, self.n_edges + 1):
            if e in seen:
                continue
            comp = []
            x = e
            while x not in seen:
                seen.add(x)
                comp.append(x)
                x = self.next_edge(x, heads)
            comps.append(tuple(comp))
        return comps

    def n_components(self):
        return len(self.edge_components()) + self.unknots

    def component_of_edge(self):
        out = {}
        for k, comp in enumerate(self.edge_components()):
            for e in comp:
                out[e] = k
        return out

    def crossing_components(self):
        """For each crossing, (component of under strand, component of over strand)."""
        comp = self.component_of_edge()
        return [(comp[c.quad[0]], comp[c.quad[1]]) for c in self.crossings]

    def to_pd(self):
        toks = []
        if self.unknots:
            toks.append(f"O:{self.unknots}")
        toks.extend(c.token() for c in self.crossings)
        return " ".join(toks)

    def canonical_pd(self):
        toks = sorted(c.token() for c in self.crossings)
        if self.unknots:
            toks.insert(0, f"O:{self.unknots}")
        return " ".join(toks)

    def to_json(self):
        return {
            "n_edges": self.n_edges,
            "unknots": self.unknots,
            "crossings": [{"quad": list(c.quad), "sign": c.sign} for c in self.crossings],
        }

    @classmethod
    def from_json(cls, obj):
        return cls(
            tuple(Crossing(tuple(c["quad"]), c["sign"]) for c in obj["crossings"]),
            obj["n_edges"],
            obj.get("unknots", 0),
        )

    def relabel(self, crossing_perm, edge_perm):
        """Move crossing i to position crossing_perm[i] with labels sent through edge_perm."""
        new = [None] * self.n_crossings
        for i, c in enumerate(self.crossings):
            new[crossing_perm[i]] = Crossing(tuple(edge_perm[e - 1] for e in c.quad), c.sign)
        return Diagram(tuple(new), self.n_edges, self.unknots, self.oriented)


def _validate(d: Diagram):
    counts = {}
    for c in d.crossings:
        if len(c.quad) != 4:
            raise DiagramError("crossing needs four edge labels")
        if c.sign not in (1, -1):
            raise DiagramError("crossing sign must be +1 or -1")
        for e in c.quad:
            if not 1 <= e <= d.n_edges:
                raise DiagramError(f"edge label {e} out of range")
            counts[e] = counts.get(e, 0) + 1
    for e in range(1, d.n_edges + 1):
        if counts.get(e, 0) != 2:
            raise DiagramError(f"edge label {e} appears {counts.get(e, 0)} times")
    if d.unknots < 0:
        raise DiagramError("negative unknot count")
    if not d.oriented:
        return
    heads = {}
    for i, c in enumerate(d.crossings):
        for s in c.head_slots():
            e = c.quad[s]
            if e in heads:
                raise DiagramError(f"orientation inconsistency at edge {e}")
            heads[e] = (i, s)


# ---------------------------------------------------------------- parsing

_TOKEN = re.compile(r"X\[\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\]$")
_UNKNOT = re.compile(r"O:(\d+)$")
_BOUNDARY = re.compile(r"([LR])\[\s*(\d+)\s*\]$")


def _tokens(text):
    # commas inside brackets are part of the token; split on whitespace and
    # on commas between tokens
    text = text.replace("],", "] ")
    return [t for t in re.split(r"\s+", text.strip()) if t]


def _default_sign(quad):
    b, d = quad[1], quad[3]
    return 1 if (b - d == 1 or d - b > 1) else -1


def infer_signs(quads, hints=None):
    """Crossing signs making every edge have one head and one tail.

    hints maps (crossing index, slot) -> True (head) / False (tail).
    Components that are nowhere under-crossing and carry no hint are
    oriented by the usual label convention of consecutive edge numbers.
    """
    hints = dict(hints or {})
    n = len(quads)
    ends = {}
    for i, q in enumerate(quads):
        for s, e in enumerate(q):
            ends.setdefault(e, []).append((i, s))
    # head(i,1) <=> sign -1 ; head(i,3) <=> sign +1
    fixed: Dict[int, int] = {}
    rel: Dict[int, List[Tuple[int, int]]] = {i: [] for i in range(n)}

    def force(i, val):
        if fixed.get(i, val) != val:
            raise DiagramError("orientation inconsistency")
        fixed[i] = val

    def sign_for_head(slot, is_head):
        # sign making slot (1 or 3) a head (is_head) or a tail
        if slot == 3:
            return 1 if is_head else -1
        return -1 if is_head else 1

    for (i, s), is_head in hints.items():
        if s == 0 and not is_head or s == 2 and is_head:
            raise DiagramError("orientation inconsistency with boundary")
        if s in (1, 3):
            force(i, sign_for_head(s, is_head))

    for e, pts in ends.items():
        if len(pts) != 2:
            continue
        (i1, s1), (i2, s2) = pts
        f1, f2 = s1 in (0, 2), s2 in (0, 2)
        if f1 and f2:
            if (s1 == 0) == (s2 == 0):
                raise DiagramError(f"orientation inconsistency at edge {e}")
        elif f1:
            force(i2, sign_for_head(s2, s1 == 2))
        elif f2:
            force(i1, sign_for_head(s1, s2 == 2))
        else:
            # exactly one head: head(i1,s1) xor head(i2,s2)
            # head(i,3) = (sign=+1), head(i,1) = (sign=-1)
            # sign_i1 relation: parity 0 means equal signs
            same = (s1 == s2)
            parity = 1 if same else 0
            if i1 == i2:
                if parity == 1:
                    raise DiagramError(f"orientation inconsistency at edge {e}")
                continue
            rel[i1].append((i2, parity))
            rel[i2].append((i1, parity))

    signs: List[Optional[int]] = [None] * n
    order = sorted(range(n), key=lambda i: (i not in fixed, i))
    for start in order:
        if signs[start] is not None:
            continue
        signs[start] = fixed.get(start, _default_sign(quads[start]))
        stack = [start]
        while stack:
            i = stack.pop()
            for j, parity in rel[i]:
                want = -signs[i] if parity else signs[i]
                if signs[j] is None:
                    signs[j] = want
                    stack.append(j)
                elif signs[j] != want:
                    raise DiagramError("orientation inconsistency")
    for i, v in fixed.items():
        if signs[i] != v:
            raise DiagramError("orientation inconsistency")
    return signs


def parse_pd(text: str) -> Diagram:
    """Parse whitespace separated X[a,b,c,d] tokens (optionally O:k)."""
    quads = []
    unknots = 0
    for tok in _tokens(text):
        m = _TOKEN.match(tok)
        if m:
            quads.append(tuple(int(g) for g in m.groups()))
            continue
        m = _UNKNOT.match(tok)
        if m:
            unknots += int(m.group(1))
            continue
        raise DiagramError(f"malformed token {tok!r}")
    labels = sorted({e for q in quads for e in q})
    n_edges = 2 * len(quads)
    counts = {}
    for q in quads:
        for e in q:
            counts[e] = counts.get(e, 0) + 1
    for e, k in counts.items():
        if k != 2:
            raise DiagramError(f"edge label {e} appears {k} times")
    if labels and labels != list(range(1, n_edges + 1)):
        # compact arbitrary positive labels to 1..n preserving order
        remap = {e: k + 1 for k, e in enumerate(labels)}
        quads = [tuple(remap[e] for e in q) for q in quads]
    signs = infer_signs(quads)
    return Diagram(tuple(Crossing(q, s) for q, s in zip(quads, signs)), n_edges, unknots)


# ---------------------------------------------------------------- invariants

def linking_matrix(d: Diagram):
    """Symmetric matrix of pairwise linking numbers (components with no
    crossings are listed after the others)."""
    k = d.n_components()
    mat = [[0] * k for _ in range(k)]
    twice = [[0] * k for _ in range(k)]
    for (cu, co), c in zip(d.crossing_components(), d.crossings):
        if cu != co:
            twice[cu][co] += c.sign
            twice[co][cu] += c.sign
    for i in range(k):
        for j in range(k):
            if twice[i][j] % 2:
                raise DiagramError("odd crossing count between components")
            mat[i][j] = twice[i][j] // 2
    return mat


def state_bits(d: Diagram, state):
    return tuple(v - c.min_value() for v, c in zip(state, d.crossings))


def check_state(d: Diagram, state):
    if len(state) != d.n_crossings:
        raise DiagramError("state length does not match the diagram")
    for v, c in zip(state, d.crossings):
        if v not in c.values():
            raise DiagramError(f"value {v} not allowed at a crossing of sign {c.sign}")


def resolve(d: Diagram, state) -> Smoothing:
    """Circles of the complete resolution selected by state."""
    check_state(d, state)
    parent = list(range(d.n_edges + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for v, c in zip(state, d.crossings):
        a, b, cc, dd = c.quad
        if v == c.min_value():
            pairs = ((a, b), (cc, dd))
        else:
            pairs = ((a, dd), (b, cc))
        for x, y in pairs:
            rx, ry = find(x), find(y)
            if rx != ry:
                parent[rx] = ry
    groups = {}
    for e in range(1, d.n_edges + 1):
        groups.setdefault(find(e), set()).add(e)
    circles = sorted((frozenset(g) for g in groups.values()), key=min)
    circles += [frozenset({-(i + 1)}) for i in range(d.unknots)]
    return Smoothing(tuple(circles))


@dataclass(frozen=True)
class PartialResolution:
    """D with some crossings smoothed.

    kept lists the old indices of the surviving crossings (in order), and
    edge_map sends an old edge label to its new label, or to -(k+1) when
    the edge ends up on the crossingless circle number k.
    """
    diagram: Diagram
    kept: Tuple[int, ...]
    edge_map: Dict[int, int]

    def image(self, circle):
        """A circle of a full resolution of D, in the labels of the partial one."""
        return frozenset(self.edge_map[e] if e > 0 else e for e in circle)


def partial_resolution(d: Diagram, values: Dict[int, int]) -> PartialResolution:
    """Smooth crossing i according to values[i]; other crossings survive.

    Old unknots keep their numbers, new crossingless circles follow them
    ordered by smallest old label.
    """
    parent = list(range(d.n_edges + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, v in values.items():
        c = d.crossings[i]
        if v not in c.values():
            raise DiagramError(f"value {v} not allowed at a crossing of sign {c.sign}")
        a, b, cc, dd = c.quad
        pairs = ((a, b), (cc, dd)) if v == c.min_value() else ((a, dd), (b, cc))
        for x, y in pairs:
            rx, ry = find(x), find(y)
            if rx != ry:
                parent[rx] = ry
    kept = tuple(i for i in range(d.n_crossings) if i not in values)
    used = sorted({find(e) for i in kept for e in d.crossings[i].quad})
    remap = {r: k + 1 for k, r in enumerate(used)}
    loose = sorted({find(e) for e in range(1, d.n_edges + 1)} - set(used),
                   key=lambda r: min(e for e in range(1, d.n_edges + 1) if find(e) == r))
    for k, r in enumerate(loose):
        remap[r] = -(d.unknots + k + 1)
    edge_map = {e: remap[find(e)] for e in range(1, d.n_edges + 1)}
    crossings = tuple(Crossing(tuple(edge_map[e] for e in d.crossings[i].quad), d.crossings[i].sign)
                      for i in kept)
    new = Diagram(crossings, len(used), d.unknots + len(loose), oriented=False)
    return PartialResolution(new, kept, edge_map)


def mirror(d: Diagram) -> Diagram:
    """Swap over and under strands at every crossing."""
    out = []
    for c in d.crossings:
        a, b, cc, dd = c.quad
        if c.sign > 0:
            out.append(Crossing((dd, a, b, cc), -1))
        else:
            out.append(Crossing((b, cc, dd, a), 1))
    return Diagram(tuple(out), d.n_edges, d.unknots)


# ---------------------------------------------------------------- periodic

@dataclass(frozen=True)
class PeriodicDiagram:
    base: Diagram
    m: int
    crossing_perm: Tuple[int, ...]
    edge_perm: Tuple[int, ...]
    unknot_perm: Tuple[int, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "crossing_perm", tuple(self.crossing_perm))
        object.__setattr__(self, "edge_perm", tuple(self.edge_perm))
        up = tuple(self.unknot_perm) or tuple(range(self.base.unknots))
        object.__setattr__(self, "unknot_perm", up)
        _validate_periodic(self)

    def crossing_orbits(self):
        seen = set()
        orbits = []
        for i in range(self.base.n_crossings):
            if i in seen:
                continue
            orb = [i]
            j = self.crossing_perm[i]
            while j != i:
                orb.append(j)
                j = self.crossing_perm[j]
            seen.update(orb)
            orbits.append(tuple(orb))
        return orbits

    def component_perm(self):
        """Permutation of components induced by the rotation."""
        comp = self.base.component_of_edge()
        ne = len(self.base.edge_components())
        perm = [None] * (ne + self.base.unknots)
        for e, k in comp.items():
            perm[k] = comp[self.edge_perm[e - 1]]
        for i, j in enumerate(self.unknot_perm):
            perm[ne + i] = ne + j
        return tuple(perm)

    def act_on_state(self, state):
        """gI = I o crossing_perm^-1."""
        out = [None] * len(state)
        for i, v in enumerate(state):
            out[self.crossing_perm[i]] = v
        return tuple(out)

    def to_json(self):
        return {
            "base": self.base.to_json(),
            "m": self.m,
            "crossing_perm": list(self.crossing_perm),
            "edge_perm": list(self.edge_perm),
            "unknot_perm": list(self.unknot_perm),
        }

    @classmethod
    def from_json(cls, obj):
        return cls(Diagram.from_json(obj["base"]), obj["m"], tuple(obj["crossing_perm"]),
                   tuple(obj["edge_perm"]), tuple(obj.get("unknot_perm", ())))


def _perm_power_is_identity(perm, m):
    for i in range(len(perm)):
        j = i
        for _ in range(m):
            j = perm[j]
        if j != i:
            return False
    return True


def _validate_periodic(pd: PeriodicDiagram):
    d = pd.base
    if pd.m < 2:
        raise DiagramError("period must be at least 2")
    if sorted(pd.crossing_perm) != list(range(d.n_crossings)):
        raise DiagramError("crossing_perm is not a permutation")
    if sorted(pd.edge_perm) != list(range(1, d.n_edges + 1)):
        raise DiagramError("edge_perm is not a permutation")
    if sorted(pd.unknot_perm) != list(range(d.unknots)):
        raise DiagramError("unknot_perm is not a permutation")
    for perm in (pd.crossing_perm, tuple(e - 1 for e in pd.edge_perm), pd.unknot_perm):
        if not _perm_power_is_identity(perm, pd.m):
            raise DiagramError("the rotation does not have order dividing m")
    for i in range(d.n_crossings):
        j, k = i, 0
        while True:
            j = pd.crossing_perm[j]
            k += 1
            if j == i:
                break
        if k != pd.m:
            raise DiagramError("the rotation must act freely on crossings")
        if d.crossings[pd.crossing_perm[i]].sign != d.crossings[i].sign:
            raise DiagramError("the rotation must preserve crossing signs")
    if d.relabel(pd.crossing_perm, pd.edge_perm) != d:
        raise DiagramError("the rotation is not an automorphism of the diagram")


@dataclass(frozen=True)
class Tangle:
    quads: Tuple[Tuple[int, int, int, int], ...]
    left: Tuple[int, ...]
    right: Tuple[int, ...]


def parse_tangle(text: str) -> Tangle:
    quads, left, right = [], [], []
    for tok in _tokens(text):
        m = _TOKEN.match(tok)
        if m:
            quads.append(tuple(int(g) for g in m.groups()))
            continue
        m = _BOUNDARY.match(tok)
        if m:
            (left if m.group(1) == "L" else right).append(int(m.group(2)))
            continue
        raise DiagramError(f"malformed token {tok!r}")
    if len(left) != len(right):
        raise DiagramError("boundary mismatch: left and right arcs differ in number")
    if len(set(left)) != len(left) or len(set(right)) != len(right):
        raise DiagramError("repeated boundary marker")
    counts = {}
    for q in quads:
        for e in q:
            counts[e] = counts.get(e, 0) + 1
    for e in left + right:
        counts[e] = counts.get(e, 0) + 1
    for e, k in counts.items():
        if k != 2:
            raise DiagramError(f"edge label {e} appears {k} times")
    return Tangle(tuple(quads), tuple(left), tuple(right))


def _glue(t: Tangle, m: int):
    nx = len(t.quads)
    labels = sorted({e for q in t.quads for e in q} | set(t.left) | set(t.right))
    parent = {(c, e): (c, e) for c in range(m) for e in labels}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for c in range(m):
        for r, l in zip(t.right, t.left):
            a, b = find((c, r)), find(((c + 1) % m, l))
            if a != b:
                parent[a] = b
    appears = {e for q in t.quads for e in q}
    classes = {}
    for key in parent:
        classes.setdefault(find(key), []).append(key)
    edge_classes, circle_classes = [], []
    for members in classes.values():
        members.sort()
        if any(e in appears for _, e in members):
            edge_classes.append(members)
        else:
            circle_classes.append(members)
    edge_classes.sort(key=lambda ms: ms[0])
    circle_classes.sort(key=lambda ms: ms[0])
    label = {}
    for k, ms in enumerate(edge_classes):
        for key in ms:
            label[key] = k + 1
    circ = {}
    for k, ms in enumerate(circle_classes):
        for key in ms:
            circ[key] = k
    quads, hints = [], {}
    left, right = set(t.left), set(t.right)
    for c in range(m):
        for i, q in enumerate(t.quads):
            quads.append(tuple(label[(c, e)] for e in q))
            for s, e in enumerate(q):
                if e in left:
                    hints[(c * nx + i, s)] = True
                elif e in right:
                    hints[(c * nx + i, s)] = False
    signs = infer_signs(quads, hints)
    base = Diagram(tuple(Crossing(q, s) for q, s in zip(quads, signs)),
                   len(edge_classes), len(circle_classes))
    crossing_perm = tuple(((c + 1) % m) * nx + i for c in range(m) for i in range(nx))
    edge_perm = [0] * len(edge_classes)
    for k, ms in enumerate(edge_classes):
        c, e = ms[0]
        edge_perm[k] = label[((c + 1) % m, e)]
    unknot_perm = [0] * len(circle_classes)
    for k, ms in enumerate(circle_classes):
        c, e = ms[0]
        unknot_perm[k] = circ[((c + 1) % m, e)]
    return base, crossing_perm, tuple(edge_perm), tuple(unknot_perm)


def build_periodic(quotient, m: int) -> PeriodicDiagram:
    """m rotated copies of an annular tangle, glued right boundary to left."""
    if m < 2:
        raise DiagramError("period must be at least 2")
    t = parse_tangle(quotient) if isinstance(quotient, str) else quotient
    base, cp, ep, up = _glue(t, m)
    return PeriodicDiagram(base, m, cp, ep, up)


def tangle_closure(quotient) -> Diagram:
    """Close a tangle on itself (a single copy)."""
    t = parse_tangle(quotient) if isinstance(quotient, str) else quotient
    return _glue(t, 1)[0]


def braid_tangle(word: Sequence[int], strands: int) -> str:
    """Tangle text for a braid word; generator k>0 is sigma_k, -k its inverse.

    Strand positions are numbered 1..strands from bottom to top and the
    braid runs left to right.  sigma_k sends the strand at position k under
    the strand at position k+1, which gives a positive crossing.
    """
    next_label = [0]

    def fresh():
        next_label[0] += 1
        return next_label[0]

    current = [fresh() for _ in range(strands)]
    left = list(current)
    toks = []
    for g in word:
        k = abs(g) - 1
        if not 0 <= k < strands - 1:
            raise DiagramError(f"generator {g} out of range")
        in_lo, in_hi = current[k], current[k + 1]
        out_lo, out_hi = fresh(), fresh()
        if g > 0:
            quad = (in_lo, out_lo, out_hi, in_hi)
        else:
            quad = (in_hi, in_lo, out_lo, out_hi)
        toks.append("X[%d,%d,%d,%d]" % quad)
        current[k], current[k + 1] = out_lo, out_hi
    # a strand untouched by the word is both a left and a right arc
    toks += [f"L[{e}]" for e in left]
    toks += [f"R[{e}]" for e in current]
    return " ".join(toks)


def braid_closure(word: Sequence[int], strands: int) -> Diagram:
    return tangle_closure(braid_tangle(word, strands))


def periodic_mirror(pd: PeriodicDiagram) -> PeriodicDiagram:
    return PeriodicDiagram(mirror(pd.base), pd.m, pd.crossing_perm, pd.edge_perm, pd.unknot_perm)
