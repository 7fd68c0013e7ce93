import random
from fractions import Fraction

import pytest
from hypothesis import assume, given, settings, strategies as st

from periodic_homology import corpus
from periodic_homology.cyclotomic import CycElt
from periodic_homology.diagram import braid_closure, mirror, parse_pd
from periodic_homology.khcomplex import build_complex, homology_bigraded
from periodic_homology.polynomials import HomflyPoly, LaurentPoly
from periodic_homology.skeinpoly import (DELTA, T_TREFOIL, BudgetExceeded, congruent_mod_gap,
                                         eval_cyclotomic, gap_poly, homfly, in_ideal, rt,
                                         skein_residual, symmetry_defect, t_poly,
                                         trefoil_divisibility)

import oracles

q = LaurentPoly.q()

laurent = st.dictionaries(st.integers(-8, 8), st.integers(-5, 5), max_size=6).map(LaurentPoly)


def quantum(n):
    return sum((LaurentPoly.monomial(n - 1 - 2 * k) for k in range(n)), LaurentPoly())


# ---------------------------------------------------------------- polynomial arithmetic

@settings(max_examples=80)
@given(laurent, laurent, laurent)
def test_ring_laws(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a - a == LaurentPoly()


@settings(max_examples=60)
@given(laurent, laurent, st.sampled_from([Fraction(2), Fraction(-3, 2), Fraction(5, 7)]))
def test_evaluation_homomorphism(a, b, x):
    assert (a * b).evaluate(x) == a.evaluate(x) * b.evaluate(x)
    assert (a + b).evaluate(x) == a.evaluate(x) + b.evaluate(x)


@settings(max_examples=60)
@given(laurent)
def test_text_and_json_roundtrip(a):
    assert LaurentPoly.from_text(a.to_text()) == a
    assert LaurentPoly.from_json(a.to_json()) == a


def test_text_form():
    p = LaurentPoly({-3: -1, 1: 2})
    assert p.to_text() == "-1*q^-3 + 2*q^1"
    assert (q ** 3 + q + q ** -1 + q ** -3).pretty() == "q^3 + q^1 + q^-1 + q^-3"


@settings(max_examples=60)
@given(laurent, laurent)
def test_exact_division(a, b):
    assume(not b.is_zero())
    assert (a * b).exact_div(b) == a


# ---------------------------------------------------------------- HOMFLYPT

def test_unknot():
    assert homfly(parse_pd("O:1")) == HomflyPoly.const(1)
    assert homfly(parse_pd("X[1,2,2,1]")) == HomflyPoly.const(1)


def test_split_union():
    t = corpus.diagram("trefoil")
    both = parse_pd("O:1 " + t.to_pd())
    assert homfly(both) == DELTA * homfly(t)
    assert homfly(parse_pd("O:2")) == DELTA


def test_trefoil_value():
    # X(a, b) for the positive trefoil with a X+ - a^-1 X- = b X0
    x = homfly(corpus.diagram("trefoil"))
    assert x == HomflyPoly({(-2, 2): 1, (-2, 0): 2, (-4, 0): -1})


@pytest.mark.parametrize("name", sorted(corpus.DIAGRAMS))
def test_traversal_independence(name):
    d = corpus.diagram(name)
    x = homfly(d)
    for seed in range(3):
        assert homfly(d, rng=random.Random(seed)) == x


@pytest.mark.parametrize("name", ["trefoil", "figure8", "5_2", "hopf", "granny"])
def test_skein_relation_holds(name):
    d = corpus.diagram(name)
    for i in range(d.n_crossings):
        assert skein_residual(d, i).is_zero()


@pytest.mark.parametrize("name", corpus.KNOTS)
def test_knots_even_b(name):
    x = homfly(corpus.diagram(name))
    assert all(j % 2 == 0 for (_, j), _ in x.items())


@pytest.mark.parametrize("name", sorted(corpus.DIAGRAMS))
def test_mirror_homfly(name):
    d = corpus.diagram(name)
    assert homfly(mirror(d)) == homfly(d).mirror()
    for N in (2, 3):
        assert rt(homfly(mirror(d)), N) == rt(homfly(d), N).bar()


def test_budget():
    big = braid_closure((1,) * 9, 2)
    with pytest.raises(BudgetExceeded):
        homfly(big, budget=8)


@settings(max_examples=20, deadline=None)
@given(st.lists(st.sampled_from((1, -1, 2, -2)), min_size=1, max_size=6))
def test_random_braids_two_pipelines(word):
    d = braid_closure(tuple(word), 3)
    x = homfly(d)
    assert homfly(d, rng=random.Random(len(word))) == x
    assert rt(x, 2) == oracles.euler_state_sum(d).bar()


# ---------------------------------------------------------------- RT_N

@pytest.mark.parametrize("N", [2, 3, 4, 5])
def test_unknot_rt(N):
    u = homfly(parse_pd("O:1"))
    assert rt(u, N) == quantum(N)
    assert rt(u, N, reduced=True) == LaurentPoly.const(1)


def test_unknot_N3():
    assert rt(homfly(parse_pd("O:1")), 3) == q ** 2 + 1 + q ** -2


def test_trefoil_two_pipelines():
    d = corpus.diagram("trefoil")
    krp = homology_bigraded(build_complex(d)).poincare()
    assert rt(homfly(d), 2) == krp.at_t(-1).bar()


DETERMINANTS = {"3_1": 3, "4_1": 5, "5_1": 5, "5_2": 7, "6_1": 9, "6_2": 11, "6_3": 13}


@pytest.mark.parametrize("name,det", sorted(DETERMINANTS.items()))
def test_determinants(name, det):
    # |V(-1)|: the reduced RT_2 at q = i
    v = eval_cyclotomic(rt(homfly(corpus.diagram(name)), 2, reduced=True), 4)
    assert v.is_rational() and abs(v.c[0]) == det


def test_rt_rejects_small_N():
    with pytest.raises(ValueError):
        rt(HomflyPoly.const(1), 1)


# ---------------------------------------------------------------- T_N and roots of unity

def test_t_poly_values():
    assert t_poly(2) == q ** 8 - q ** 6 - q ** 2 + 1
    assert t_poly(3) == q ** 12 - q ** 8 - q ** 4 + 1


@pytest.mark.parametrize("N", range(2, 9))
def test_t_poly_at_one(N):
    assert t_poly(N).evaluate(1) == 0


def test_t_poly_roots_of_unity():
    assert eval_cyclotomic(t_poly(2), 6) == CycElt.scalar(6, 0)
    assert eval_cyclotomic(t_poly(3), 6) == CycElt.scalar(6, 3)
    for N in (3, 5, 7, 9):
        assert eval_cyclotomic(t_poly(N), 8) == CycElt.scalar(8, 0)


@pytest.mark.parametrize("N", range(2, 10))
def test_t_poly_zeta6(N):
    expected = 3 if N % 3 == 0 else 0
    assert eval_cyclotomic(t_poly(N), 6) == CycElt.scalar(6, expected)


@settings(max_examples=40)
@given(laurent, laurent, st.sampled_from([3, 4, 5, 6, 8, 12]))
def test_eval_cyclotomic_homomorphism(a, b, n):
    assert eval_cyclotomic(a * b, n) == eval_cyclotomic(a, n) * eval_cyclotomic(b, n)


# ---------------------------------------------------------------- congruences

def test_gap_examples():
    assert congruent_mod_gap(q ** 3 - q ** -3, 3)
    assert not congruent_mod_gap(q - q ** -1, 3)


@settings(max_examples=60)
@given(laurent, st.integers(1, 6))
def test_gap_multiples(a, k):
    assert congruent_mod_gap(a * gap_poly(k), k)


@pytest.mark.parametrize("name", corpus.KNOTS)
@pytest.mark.parametrize("N", [2, 3, 4, 5])
def test_divisibility_corollary(name, N):
    defect = symmetry_defect(rt(homfly(corpus.diagram(name)), N))
    assert congruent_mod_gap(defect, 3)
    assert congruent_mod_gap(defect, 4)


@pytest.mark.parametrize("name", corpus.KNOTS)
def test_trefoil_divisibility(name):
    rep = trefoil_divisibility(homfly(corpus.diagram(name)))
    assert rep.divisible
    assert rep.quotient * T_TREFOIL + 1 == homfly(corpus.diagram(name))


def test_in_ideal_generators():
    for p, ell in ((3, 1), (2, 2), (5, 1), (3, 2)):
        assert in_ideal(gap_poly(p ** ell), p, ell).member
        assert in_ideal(LaurentPoly.const(p ** ell) * (q ** 2 - 1), p, ell).member
        assert not in_ideal(LaurentPoly.const(1), p, ell).member


@settings(max_examples=40, deadline=None)
@given(laurent, laurent, laurent, st.sampled_from([(2, 1), (2, 2), (3, 1), (3, 2), (5, 1)]))
def test_in_ideal_combinations(a, b, c, pl):
    p, ell = pl
    poly = a * gap_poly(p ** ell) + b * p ** ell
    if ell >= 2:
        poly = poly + c * gap_poly(p) * p ** (ell - 1)
    rep = in_ideal(poly, p, ell)
    assert rep.member and rep.verify()


def test_in_ideal_failure_reported():
    rep = in_ideal(q - q ** -1, 3, 1)
    assert not rep.member and rep.failing_residue is not None and rep.verify()


@pytest.mark.parametrize("N", [2, 3, 4, 5])
def test_trefoil_in_I3(N):
    rep = in_ideal(symmetry_defect(rt(homfly(corpus.diagram("trefoil")), N)), 3, 1)
    assert rep.member and rep.verify()
