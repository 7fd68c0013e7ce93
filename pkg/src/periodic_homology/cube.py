"""The cube of resolutions, F2 sign assignments and the cochain of a rotation.

Vertices are packed into integers: bit i is I(i) - min C_i, so the bit is
0 at the smaller resolution value of crossing i.  An edge is a pair
(v, i) with bit i of v clear; it runs from v to v | (1 << i).
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

from .diagram import Diagram, PeriodicDiagram, check_state


class CubeError(ValueError):
    pass


def _popcount(v):
    return bin(v).count("1")


@dataclass(frozen=True)
class Cube:
    signs: Tuple[int, ...]

    @classmethod
    def of(cls, d: Diagram):
        return cls(tuple(d.signs))

    @property
    def n(self):
        return len(self.signs)

    @property
    def size(self):
        return 1 << self.n

    def mins(self):
        return tuple(0 if s > 0 else -1 for s in self.signs)

    def state(self, v):
        return tuple(((v >> i) & 1) + (0 if s > 0 else -1) for i, s in enumerate(self.signs))

    def vertex(self, state):
        if len(state) != self.n:
            raise CubeError("state length does not match the cube")
        v = 0
        for i, (x, s) in enumerate(zip(state, self.signs)):
            b = x - (0 if s > 0 else -1)
            if b not in (0, 1):
                raise CubeError(f"value {x} not allowed at coordinate {i}")
            v |= b << i
        return v

    def value(self, v, i):
        """Resolution value of coordinate i at vertex v."""
        return ((v >> i) & 1) + (0 if self.signs[i] > 0 else -1)

    def edges(self):
        for v in range(self.size):
            for i in range(self.n):
                if not (v >> i) & 1:
                    yield (v, i)

    def faces(self):
        for v in range(self.size):
            for i in range(self.n):
                if (v >> i) & 1:
                    continue
                for j in range(i + 1, self.n):
                    if not (v >> j) & 1:
                        yield v, i, j

    def edge_of_states(self, I, J):
        a, b = self.vertex(I), self.vertex(J)
        diff = a ^ b
        if _popcount(diff) != 1 or b & diff == 0:
            raise CubeError("not an immediate successor")
        return (a, diff.bit_length() - 1)

    def extended(self, sign):
        return Cube(self.signs + (sign,))


def standard_rule(v, i):
    return _popcount(v & ((1 << i) - 1)) & 1


class SignAssignment:
    """F2 valued 1-cochain on cube edges.

    Stored as the standard rule plus a sparse set of flipped edges; the
    class does not insist on the cocycle condition (see verify_cocycle).
    """

    __slots__ = ("cube", "_flips")

    def __init__(self, cube: Cube, flips=None):
        self.cube = cube
        self._flips = frozenset(flips or ())

    @classmethod
    def from_function(cls, cube, f):
        return cls(cube, [e for e in cube.edges() if (f(*e) & 1) != standard_rule(*e)])

    def __call__(self, v, i):
        return standard_rule(v, i) ^ ((v, i) in self._flips)

    def on_states(self, I, J):
        return self(*self.cube.edge_of_states(I, J))

    def flipped(self, edge):
        return SignAssignment(self.cube, self._flips ^ {edge})

    def materialize(self):
        return {e: self(*e) for e in self.cube.edges()}

    def __eq__(self, other):
        return isinstance(other, SignAssignment) and self.cube == other.cube and self._flips == other._flips

    def __hash__(self):
        return hash((self.cube, self._flips))

    def __add__(self, other):
        return SignAssignment.from_function(self.cube, lambda v, i: self(v, i) ^ other(v, i))

    def to_json(self):
        c = self.cube
        return {
            "signs": list(c.signs),
            "edges": [
                {"from": list(c.state(v)), "to": list(c.state(v | 1 << i)), "crossing": i, "value": self(v, i)}
                for v, i in c.edges()
            ],
        }


class ZeroCochain:
    __slots__ = ("cube", "values")

    def __init__(self, cube: Cube, values: Sequence[int]):
        self.cube = cube
        self.values = tuple(int(x) & 1 for x in values)
        if len(self.values) != cube.size:
            raise CubeError("cochain size does not match the cube")

    @classmethod
    def from_function(cls, cube, f):
        return cls(cube, [f(v) for v in range(cube.size)])

    def __call__(self, v):
        return self.values[v]

    def at(self, state):
        return self.values[self.cube.vertex(state)]

    def coboundary(self):
        return SignAssignment.from_function(self.cube, lambda v, i: self(v) ^ self(v | 1 << i))

    def __eq__(self, other):
        return isinstance(other, ZeroCochain) and self.cube == other.cube and self.values == other.values

    def __hash__(self):
        return hash((self.cube, self.values))

    def to_json(self):
        return {
            "signs": list(self.cube.signs),
            "values": [{"state": list(self.cube.state(v)), "value": x} for v, x in enumerate(self.values)],
        }


# ---------------------------------------------------------------- gradings

def gradings(d: Diagram, I, N: int = 2):
    """(h, q) of a vertex of the cube.

    q_i = I(i) - (N - 1) at a positive crossing and -I(i) + (N - 1) at a
    negative one.
    """
    check_state(d, I)
    h = sum(I)
    q = 0
    for x, c in zip(I, d.crossings):
        q += x - (N - 1) if c.sign > 0 else -x + (N - 1)
    return h, q


def complex_shift(cube: Cube, v):
    """(h, q) shift of the chain group at vertex v in the N=2 complex.

    h = sum I(i); q = sum (I(i) + sign_i).  Circle degrees are added on top.
    """
    h = 0
    q = 0
    for i, s in enumerate(cube.signs):
        x = cube.value(v, i)
        h += x
        q += x + s
    return h, q


# ---------------------------------------------------------------- sign assignments

def standard_sign(d_or_cube) -> SignAssignment:
    cube = d_or_cube if isinstance(d_or_cube, Cube) else Cube.of(d_or_cube)
    return SignAssignment(cube)


def face_sum(s: SignAssignment, v, i, j):
    return s(v, i) ^ s(v, j) ^ s(v | 1 << i, j) ^ s(v | 1 << j, i)


def verify_cocycle(s: SignAssignment) -> bool:
    return all(face_sum(s, *f) == 1 for f in s.cube.faces())


def solve_coboundary(s1: SignAssignment, s2: SignAssignment) -> ZeroCochain:
    """t with t(v) + t(v') = s1(e) + s2(e) on every edge, t(0) = 0."""
    cube = s1.cube
    if s2.cube != cube:
        raise CubeError("sign assignments live on different cubes")
    t = [None] * cube.size
    t[0] = 0
    queue = deque([0])
    while queue:
        v = queue.popleft()
        for i in range(cube.n):
            w = v ^ (1 << i)
            if t[w] is not None:
                continue
            src = min(v, w)
            t[w] = t[v] ^ s1(src, i) ^ s2(src, i)
            queue.append(w)
    for v, i in cube.edges():
        if t[v] ^ t[v | 1 << i] != s1(v, i) ^ s2(v, i):
            raise CubeError(
                f"no coboundary solution: inconsistent at edge {cube.state(v)} -> {cube.state(v | 1 << i)}"
            )
    return ZeroCochain(cube, t)


def extend_sign(s: SignAssignment, new_crossing_sign: int) -> SignAssignment:
    """Extension to one more crossing, appended as the last coordinate.

    The layer where the new coordinate takes value 0 copies s, edges along
    the new coordinate get 0, and the other layer gets 1 + s.
    """
    cube = s.cube
    big = cube.extended(new_crossing_sign)
    n = cube.n
    copy_bit = 0 if new_crossing_sign > 0 else 1
    mask = (1 << n) - 1

    def f(v, i):
        if i == n:
            return 0
        base = s(v & mask, i)
        return base if (v >> n) & 1 == copy_bit else 1 ^ base

    return SignAssignment.from_function(big, f)


def permute_vertex(v, perm):
    """Vertex of gI when crossing i moves to perm[i]."""
    w = 0
    for i, j in enumerate(perm):
        if (v >> i) & 1:
            w |= 1 << j
    return w


def act_on_sign(s: SignAssignment, perm) -> SignAssignment:
    """g.s defined by (g.s)(gI, gI') = s(I, I')."""
    cube = s.cube
    if any(cube.signs[i] != cube.signs[j] for i, j in enumerate(perm)):
        raise CubeError("the permutation does not preserve crossing signs")
    inv = [0] * len(perm)
    for i, j in enumerate(perm):
        inv[j] = i
    return SignAssignment.from_function(cube, lambda w, j: s(permute_vertex(w, inv), inv[j]))


@dataclass(frozen=True)
class ActionData:
    perm: Tuple[int, ...]
    t: ZeroCochain
    order: int

    def g_vertex(self, v):
        return permute_vertex(v, self.perm)

    def g_state(self, I):
        c = self.t.cube
        return c.state(self.g_vertex(c.vertex(I)))

    def sign_exponent(self, v):
        """Exponent of -1 attached to the action at source vertex v."""
        return self.t(self.g_vertex(v))

    def t_tilde(self, v):
        total = 0
        for _ in range(self.order):
            total ^= self.t(v)
            v = self.g_vertex(v)
        return total


def action_data(pd: PeriodicDiagram, s: Optional[SignAssignment] = None, N: int = 2,
                flip_t0: bool = False) -> ActionData:
    """Solve dt = g.s - s with t = 0 at the state (0,...,0) and check the
    orbit sums vanish.  The state (0,...,0) is the oriented resolution, so
    its vertex has bit 1 at every negative crossing.

    flip_t0 adds the constant cochain 1 (debug only).
    """
    s = s or standard_sign(pd.base)
    gs = act_on_sign(s, pd.crossing_perm)
    t = solve_coboundary(gs, s)
    v0 = t.cube.vertex((0,) * t.cube.n)
    if t(v0) ^ flip_t0:
        t = ZeroCochain(t.cube, [1 ^ x for x in t.values])
    ad = ActionData(tuple(pd.crossing_perm), t, pd.m)
    if flip_t0:
        return ad
    for v in range(t.cube.size):
        if ad.t_tilde(v):
            raise CubeError(f"orbit sum of t does not vanish at {t.cube.state(v)}")
    return ad


# ---------------------------------------------------------------- closed forms

def _val2(cube, v, i):
    return cube.value(v, i) & 1


def iterated_extension(s: SignAssignment, new_signs) -> SignAssignment:
    for e in new_signs:
        s = extend_sign(s, e)
    return s


def iterated_extension_formula(s: SignAssignment, new_signs) -> SignAssignment:
    """Closed form of repeated extend_sign.

    On an edge changing appended coordinate k the sign is the sum of the
    later appended values; on an edge inside the base it is the sum of all
    appended values plus s.  Values are read mod 2, so -1 counts as 1.
    """
    n = s.cube.n
    big = Cube(s.cube.signs + tuple(new_signs))
    mask = (1 << n) - 1

    def f(v, i):
        if i >= n:
            return sum(_val2(big, v, j) for j in range(i + 1, big.n)) & 1
        return (sum(_val2(big, v, j) for j in range(n, big.n)) + s(v & mask, i)) & 1

    return SignAssignment.from_function(big, f)


def swap_extension_formulas(s: SignAssignment, gs: SignAssignment):
    """s3 and s4 on Cube(D) x {0,1} x {0,1} in closed form.

    s3 extends s by x then y; s4 extends g.s by y then x.
    """
    n = s.cube.n
    big = Cube(s.cube.signs + (1, 1))
    mask = (1 << n) - 1

    def s3(v, i):
        x, y = (v >> n) & 1, (v >> (n + 1)) & 1
        if i == n + 1:
            return 0
        if i == n:
            return y
        return s(v & mask, i) ^ x ^ y

    def s4(v, i):
        x, y = (v >> n) & 1, (v >> (n + 1)) & 1
        if i == n:
            return 0
        if i == n + 1:
            return x
        return gs(v & mask, i) ^ x ^ y

    return SignAssignment.from_function(big, s3), SignAssignment.from_function(big, s4)


def extended_cochain(t: ZeroCochain, new_signs, kind: str) -> ZeroCochain:
    """Cochains t' on Cube(D) x (appended coordinates).

    kind 'swap':   t(I) + x y                     (two coordinates)
    kind 'cyclic': t(I) + x1 (x2 + ... + xm)
    kind 'reid2':  t(I) + (x1 + x2)(x3 + x4)      (four coordinates)
    """
    n = t.cube.n
    big = Cube(t.cube.signs + tuple(new_signs))
    mask = (1 << n) - 1

    def f(v):
        xs = [_val2(big, v, j) for j in range(n, big.n)]
        if kind in ("swap", "cyclic"):
            extra = xs[0] * sum(xs[1:])
        elif kind == "reid2":
            extra = (xs[0] + xs[1]) * (xs[2] + xs[3])
        else:
            raise ValueError(kind)
        return (t(v & mask) + extra) & 1

    return ZeroCochain.from_function(big, f)
