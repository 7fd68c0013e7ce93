import itertools
import json
import random

import pytest
from hypothesis import given, settings, strategies as st

from periodic_homology import corpus
from periodic_homology.diagram import (Diagram, DiagramError, PeriodicDiagram, braid_closure,
                                       build_periodic, linking_matrix, mirror, parse_pd,
                                       parse_tangle, partial_resolution, resolve)

from oracles import count_circles

HOPF_PD = "X[1,3,2,4] X[3,1,4,2]"
SIGMA1 = "X[1,3,4,2] L[1] L[2] R[3] R[4]"


def braid_words(max_strands=4, max_len=6):
    return st.integers(2, max_strands).flatmap(
        lambda n: st.tuples(
            st.lists(st.integers(1, n - 1).flatmap(lambda g: st.sampled_from((g, -g))),
                     min_size=1, max_size=max_len).map(tuple),
            st.just(n)))


# ---------------------------------------------------------------- parsing

def test_parse_hopf():
    d = parse_pd(HOPF_PD)
    assert d.n_crossings == 2
    assert d.n_components() == 2


def test_parse_empty():
    d = parse_pd("")
    assert d.n_crossings == 0 and d.n_components() == 0


def test_parse_unknot_record():
    d = parse_pd("O:2")
    assert d.n_crossings == 0 and d.n_components() == 2


@pytest.mark.parametrize("text", ["X[1,2,3]", "Y[1,2,3,4]", "X[1,2,3,4"])
def test_malformed_token(text):
    with pytest.raises(DiagramError, match="malformed"):
        parse_pd(text)


def test_label_count():
    with pytest.raises(DiagramError, match="appears"):
        parse_pd("X[1,2,3,4]")


def test_orientation_inconsistency():
    # edge 1 enters both crossings as an incoming under-strand
    with pytest.raises(DiagramError, match="orientation"):
        parse_pd("X[1,2,3,4] X[1,4,3,2]")


def test_token_order_and_commas():
    a = parse_pd("X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]")
    b = parse_pd("X[5,2,6,3], X[1,4,2,5], X[3,6,4,1]")
    assert a.canonical_pd() == b.canonical_pd()


def test_json_roundtrip():
    for name in corpus.DIAGRAMS:
        d = corpus.diagram(name)
        assert Diagram.from_json(json.loads(json.dumps(d.to_json()))) == d


# ---------------------------------------------------------------- invariants

def test_linking_hopf():
    assert linking_matrix(corpus.diagram("hopf")) == [[0, 1], [1, 0]]
    assert linking_matrix(parse_pd(HOPF_PD)) == [[0, 1], [1, 0]]


def test_linking_knot_and_unlink():
    assert linking_matrix(corpus.diagram("trefoil")) == [[0]]
    assert linking_matrix(parse_pd("O:2")) == [[0, 0], [0, 0]]


def test_linking_T24():
    assert linking_matrix(corpus.diagram("T(2,4)")) == [[0, 2], [2, 0]]


def test_mirror_hopf_linking():
    assert linking_matrix(mirror(corpus.diagram("hopf"))) == [[0, -1], [-1, 0]]


def test_mirror_writhe():
    t = corpus.diagram("trefoil")
    assert t.writhe == 3 and mirror(t).writhe == -3


@pytest.mark.parametrize("name", sorted(corpus.DIAGRAMS))
def test_mirror_involution(name):
    d = corpus.diagram(name)
    assert mirror(mirror(d)) == d
    assert mirror(d).writhe == -d.writhe
    assert mirror(d).n_components() == d.n_components()


@settings(max_examples=60, deadline=None)
@given(braid_words())
def test_braid_closure_properties(wn):
    word, n = wn
    d = braid_closure(word, n)
    assert d.writhe == sum(1 if g > 0 else -1 for g in word)
    lk = linking_matrix(d)
    k = len(lk)
    assert all(lk[i][j] == lk[j][i] for i in range(k) for j in range(k))
    assert all(lk[i][i] == 0 for i in range(k))
    mk = linking_matrix(mirror(d))
    assert mk == [[-x for x in row] for row in lk]


# ---------------------------------------------------------------- resolutions

def test_resolve_trefoil():
    t = corpus.diagram("trefoil")
    assert resolve(t, (0, 0, 0)).circle_count == 2
    assert resolve(t, (1, 1, 1)).circle_count == 3


def test_resolve_unknot():
    assert resolve(parse_pd("O:1"), ()).circle_count == 1


def test_resolve_rejects_bad_state():
    t = corpus.diagram("trefoil")
    with pytest.raises(DiagramError):
        resolve(t, (0, 0))
    with pytest.raises(DiagramError):
        resolve(t, (0, -1, 0))


def test_negative_crossing_values():
    f = corpus.diagram("figure8")
    state = tuple(0 if c.sign > 0 else -1 for c in f.crossings)
    assert resolve(f, state).circle_count >= 1


SMALL = [n for n in corpus.DIAGRAMS if corpus.diagram(n).n_crossings <= 6]


@pytest.mark.parametrize("name", SMALL)
def test_single_change_moves_circle_count_by_one(name):
    d = corpus.diagram(name)
    for state in itertools.product(*(c.values() for c in d.crossings)):
        k = resolve(d, state).circle_count
        for i, c in enumerate(d.crossings):
            other = list(state)
            other[i] = c.values()[1] if state[i] == c.values()[0] else c.values()[0]
            assert abs(resolve(d, tuple(other)).circle_count - k) == 1


@pytest.mark.parametrize("name", SMALL)
def test_resolve_matches_independent_count(name):
    d = corpus.diagram(name)
    quads = [c.quad for c in d.crossings]
    for state in itertools.product(*(c.values() for c in d.crossings)):
        bits = [v - c.min_value() for v, c in zip(state, d.crossings)]
        assert resolve(d, state).circle_count == count_circles(quads, bits, d.n_edges, d.unknots)


def test_partial_resolution_complete():
    d = corpus.diagram("5_2")
    rng = random.Random(3)
    for _ in range(20):
        state = tuple(rng.choice(c.values()) for c in d.crossings)
        pr = partial_resolution(d, dict(enumerate(state)))
        assert pr.diagram.n_crossings == 0
        assert pr.diagram.unknots == resolve(d, state).circle_count


def test_partial_resolution_then_resolve():
    d = corpus.diagram("6_2")
    rng = random.Random(5)
    for _ in range(20):
        state = tuple(rng.choice(c.values()) for c in d.crossings)
        keep = set(rng.sample(range(d.n_crossings), 3))
        pr = partial_resolution(d, {i: v for i, v in enumerate(state) if i not in keep})
        rest = tuple(state[i] for i in pr.kept)
        assert resolve(pr.diagram, rest).circle_count == resolve(d, state).circle_count


# ---------------------------------------------------------------- periodic diagrams

def _compose_power(perm, m):
    cur = list(range(len(perm)))
    for _ in range(m):
        cur = [perm[x] for x in cur]
    return cur


@pytest.mark.parametrize("name", sorted(corpus.PERIODIC))
def test_periodic_invariants(name):
    pd = corpus.periodic(name)
    assert _compose_power(pd.crossing_perm, pd.m) == list(range(pd.base.n_crossings))
    ep = [e - 1 for e in pd.edge_perm]
    assert _compose_power(ep, pd.m) == list(range(pd.base.n_edges))
    assert pd.base.relabel(pd.crossing_perm, pd.edge_perm) == pd.base
    for orbit in pd.crossing_orbits():
        assert len(orbit) == pd.m
        assert len({pd.base.crossings[i].sign for i in orbit}) == 1


def test_periodic_trefoil_and_hopf():
    t = build_periodic(SIGMA1, 3)
    assert t.base.n_crossings == 3 and t.base.n_components() == 1 and t.base.writhe == 3
    assert t.crossing_orbits() == [(0, 1, 2)]
    h = build_periodic(SIGMA1, 2)
    assert h.base.n_components() == 2 and linking_matrix(h.base) == [[0, 1], [1, 0]]


def test_T24_two_symmetries():
    swap = corpus.periodic("T(2,4)/2-swap")
    keep = corpus.periodic("T(2,4)/2-keep")
    for pd in (swap, keep):
        assert pd.base.n_components() == 2
        assert linking_matrix(pd.base) == [[0, 2], [2, 0]]
    assert sorted(swap.component_perm()) == [0, 1] and swap.component_perm() == (1, 0)
    assert keep.component_perm() == (0, 1)


def test_build_periodic_errors():
    with pytest.raises(DiagramError):
        build_periodic(SIGMA1, 1)
    with pytest.raises(DiagramError):
        parse_tangle("X[1,3,4,2] L[1] L[2] R[3]")


def test_periodic_json_roundtrip():
    for name in corpus.PERIODIC:
        pd = corpus.periodic(name)
        assert PeriodicDiagram.from_json(json.loads(json.dumps(pd.to_json()))) == pd
