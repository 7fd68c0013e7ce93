"""Acceptance criteria 1-11, one test each.  Every test prints a PASS line
when it finishes; the terminal summary lists PASS/FAIL for all of them."""
import json

from periodic_homology import corpus
from periodic_homology.cube import (Cube, act_on_sign, action_data, extend_sign, extended_cochain,
                                    iterated_extension, iterated_extension_formula,
                                    solve_coboundary, standard_sign, swap_extension_formulas,
                                    verify_cocycle, ZeroCochain)
from periodic_homology.cyclotomic import CycElt, euler_phi
from periodic_homology.diagram import mirror, parse_pd
from periodic_homology.khcomplex import (BigradedDims, FrobeniusSpec, build_complex,
                                         eigenspace_homology, eigenspace_lee_gornik,
                                         homology_bigraded, lee_gornik, periodic_complexes,
                                         s_invariant, verify_action)
from periodic_homology.periodic import (CriterionReport, check_obstruction, check_verification,
                                        difference_polys, e1_page, jones_relations,
                                        lee_generators, orbit_change_triple, prime_power,
                                        skein_bicomplex, SkeinBicomplex)
from periodic_homology.polynomials import BiPoly, LaurentPoly
from periodic_homology.skeinpoly import (T_TREFOIL, congruent_mod_gap, eval_cyclotomic, homfly,
                                         rt, symmetry_defect, t_poly, trefoil_divisibility)

from test_cube import all_assignments, all_cocycles, is_coboundary_of

q = LaurentPoly.q()
PERIODIC = sorted(corpus.PERIODIC)


def singular(d):
    return build_complex(d, FrobeniusSpec.singular())


def generic(d):
    return build_complex(d, FrobeniusSpec.generic())


def quantum(N):
    return sum((LaurentPoly.monomial(N - 1 - 2 * k) for k in range(N)), LaurentPoly())


def done(n):
    print(f"criterion {n}: PASS")


# ---------------------------------------------------------------- 1

def test_criterion_01_unknot():
    u = parse_pd("O:1")
    assert homology_bigraded(singular(u)).poincare() == BiPoly({(0, 1): 1, (0, -1): 1})
    x = homfly(u)
    for N in range(2, 6):
        # (q^N - q^-N) / (q - q^-1), expanded
        assert rt(x, N) == quantum(N)
        assert rt(x, N) * (q - q ** -1) == q ** N - q ** -N
    done(1)


# ---------------------------------------------------------------- 2

def test_criterion_02_two_pipelines():
    names = sorted(corpus.DIAGRAMS)
    assert len(names) >= 15
    for need in ("hopf", "trefoil", "T(2,4)", "T(2,5)", "T(2,6)", "figure8", "5_1", "5_2",
                 "6_1", "6_2", "6_3", "granny", "square", "3_1#4_1"):
        assert need in names
    for name in names:
        d = corpus.diagram(name)
        krp = homology_bigraded(singular(d)).poincare()
        assert krp.at_t(-1).bar() == rt(homfly(d), 2), name
    done(2)


# ---------------------------------------------------------------- 3

def test_criterion_03_sign_calculus():
    for name in corpus.DIAGRAMS:
        d = corpus.diagram(name)
        if d.n_crossings <= 10:
            assert verify_cocycle(standard_sign(d)), name
    bases = [(), (1,), (-1,), (1, 1), (1, -1), (-1, -1)]
    # uniqueness of the extension, by brute force on cubes of at most 3 crossings
    for signs in bases:
        base = Cube(signs)
        n = base.n
        mask = (1 << n) - 1
        for new in (1, -1):
            big = base.extended(new)
            copy_bit = 0 if new > 0 else 1
            for s in all_cocycles(base):
                found = [c for c in all_assignments(big)
                         if not any(c(v, n) for v in range(base.size))
                         and all(c(v | copy_bit << n, i) == s(v & mask, i) for v, i in base.edges())
                         and verify_cocycle(c)]
                assert found == [extend_sign(s, new)]
    # layer restriction of the double extension
    for signs in bases:
        base = Cube(signs)
        layer = 1 << base.n
        for s in all_cocycles(base):
            e = iterated_extension(s, (1, -1))
            assert all(e(v | layer, i) == s(v, i) for v, i in base.edges())
    # closed forms
    for base_signs, new in [((), (1, 1, 1)), ((1,), (1, -1)), ((-1, 1), (-1, -1, 1)),
                            ((), (-1, -1, -1, -1))]:
        for s in all_cocycles(Cube(base_signs)):
            assert iterated_extension_formula(s, new) == iterated_extension(s, new)
    swap_bases = [((), ()), ((1,), (0,)), ((1, 1), (1, 0)), ((-1, -1), (1, 0))]
    for signs, perm in swap_bases:
        base = Cube(signs)
        n = base.n
        for s in all_cocycles(base):
            gs = act_on_sign(s, perm)
            t = solve_coboundary(s, gs)
            s3, s4 = swap_extension_formulas(s, gs)
            assert s3 == iterated_extension(s, (1, 1))
            assert act_on_sign(s3, tuple(perm) + (n + 1, n)) == s4
            assert solve_coboundary(s3, s4) == extended_cochain(t, (1, 1), "swap")
            for new in [(1, -1, 1, -1), (-1, 1, -1, 1), (1, 1, 1, 1), (-1, -1, -1, -1)]:
                sp = iterated_extension(s, new)
                gsp = act_on_sign(sp, tuple(perm) + (n + 2, n + 3, n, n + 1))
                assert is_coboundary_of(extended_cochain(t, new, "reid2"), sp, gsp)
    for m in (2, 3, 4):
        for signs in [(), (1,), (-1,)]:
            base = Cube(signs)
            n = base.n
            cyc = tuple(range(n)) + tuple(n + (k + 1) % m for k in range(m))
            zero = ZeroCochain(base, [0] * base.size)
            for s in all_cocycles(base):
                sp = iterated_extension(s, (1,) * m)
                t = extended_cochain(zero, (1,) * m, "cyclic")
                assert solve_coboundary(sp, act_on_sign(sp, cyc)) == t
    done(3)


# ---------------------------------------------------------------- 4

def test_criterion_04_group_action():
    for name in PERIODIC:
        pd = corpus.periodic(name)
        assert pd.m in (2, 3, 4, 5)
        ad = action_data(pd)
        assert all(ad.t_tilde(v) == 0 for v in range(ad.t.cube.size)), name
        pc = periodic_complexes(pd)
        for c, G in ((pc.singular, pc.G), (pc.generic, pc.G_generic)):
            verify_action(c, G)  # G d = d G and G^m = 1, raises otherwise
    done(4)


# ---------------------------------------------------------------- 5

def test_criterion_05_decomposition():
    for name in PERIODIC:
        pd = corpus.periodic(name)
        pc = periodic_complexes(pd, generic=False)
        eq = eigenspace_homology(pc.singular, pc.G, pd.m)
        total = BiPoly()
        for d in range(1, pd.m + 1):
            if pd.m % d == 0:
                total = total + eq.krp(d) * euler_phi(d)
        assert total == homology_bigraded(pc.singular).poincare(), name
    done(5)


# ---------------------------------------------------------------- 6

def test_criterion_06_lee():
    for name in sorted(corpus.DIAGRAMS):
        d = corpus.diagram(name)
        einf = lee_gornik(generic(d)).e_infinity()
        assert einf.total() == 2 ** d.n_components(), name
        want = {}
        for _, deg in lee_generators(d, 2):
            want[deg] = want.get(deg, 0) + 1
        assert {h: v for h, v in einf.by_h().items() if v} == want, name
        if d.n_components() == 1:
            s = s_invariant(generic(d))
            assert lee_gornik(generic(d)).lee_poly() == BiPoly({(0, s - 1): 1, (0, s + 1): 1})
    assert s_invariant(generic(corpus.diagram("trefoil"))) == 2
    assert s_invariant(generic(corpus.diagram("mirror_trefoil"))) == -2
    done(6)


# ---------------------------------------------------------------- 7

def _reconstruct(ss):
    out = ss.lee_poly()
    for k, r in ss.r_polys().items():
        assert r.nonnegative()
        out = out + (BiPoly.const(1) + BiPoly.monomial(1, 4 * k)) * r
    return out


def test_criterion_07_lee_gornik():
    for name in corpus.KNOTS:
        d = corpus.diagram(name)
        ss = lee_gornik(generic(d))
        hom = homology_bigraded(singular(d))
        assert ss.page(1) == hom, name
        assert ss.e_infinity().total() == 2
        assert _reconstruct(ss) == hom.poincare(), name
    for name in PERIODIC:
        pd = corpus.periodic(name)
        pc = periodic_complexes(pd)
        eq = eigenspace_homology(pc.singular, pc.G, pd.m)
        for j, ss in eigenspace_lee_gornik(pc.generic, pc.G_generic, pd.m).items():
            strip = BigradedDims({k[:2]: v for k, v in eq.per_j[j].dims.items()})
            assert _reconstruct(ss) == strip.poincare(), (name, j)
    done(7)


# ---------------------------------------------------------------- 8

def test_criterion_08_mirror():
    for name in sorted(corpus.DIAGRAMS):
        d = corpus.diagram(name)
        assert homology_bigraded(singular(mirror(d))) == homology_bigraded(singular(d)).flipped()
    for name in PERIODIC:
        a, b = corpus.periodic(name), corpus.periodic("mirror:" + name)
        pa, pb = periodic_complexes(a, generic=False), periodic_complexes(b, generic=False)
        ea = eigenspace_homology(pa.singular, pa.G, a.m)
        eb = eigenspace_homology(pb.singular, pb.G, b.m)
        for d in {ea.order_of(j) for j in range(a.m)}:
            assert eb.d_part(d) == ea.d_part(d).flipped(), (name, d)
    done(8)


# ---------------------------------------------------------------- 9

def test_criterion_09_skein_bicomplex():
    for name in ("trefoil/3", "hopf/2", "T(2,4)/2-swap", "T(2,4)/2-keep", "T(2,4)/4"):
        pd = corpus.periodic(name)
        rep = skein_bicomplex(pd)  # raises on any failed comparison
        assert rep.homology == homology_bigraded(singular(pd.base))
        pc = periodic_complexes(pd, generic=False)
        want = eigenspace_homology(pc.singular, pc.G, pd.m)
        assert all(rep.equivariant.per_j[j] == want.per_j[j] for j in range(pd.m))
        bc = SkeinBicomplex(pd)
        p, ell = prime_power(pd.m)
        for u in range(ell + 1):
            e1 = e1_page(pd, 0, u, bc=bc)
            assert e1.agree and e1.euler_agree, (name, u, e1.mismatches())
    done(9)


# ---------------------------------------------------------------- 10

def test_criterion_10_congruences():
    assert eval_cyclotomic(t_poly(2), 6) == CycElt.scalar(6, 0)
    assert eval_cyclotomic(t_poly(3), 6) == CycElt.scalar(6, 3)
    for N in (3, 5, 7, 9, 11):
        assert eval_cyclotomic(t_poly(N), 8) == CycElt.scalar(8, 0)
    for name in corpus.KNOTS:
        x = homfly(corpus.diagram(name))
        for N in range(2, 6):
            defect = symmetry_defect(rt(x, N))
            assert congruent_mod_gap(defect, 3) and congruent_mod_gap(defect, 4), (name, N)
        rep = trefoil_divisibility(x)
        assert rep.divisible and rep.quotient * T_TREFOIL + 1 == x, name
    done(10)


# ---------------------------------------------------------------- 11

def test_criterion_11_periodicity():
    trefoil = corpus.periodic("trefoil/3")
    t25 = corpus.periodic("T(2,5)/5")
    for pd, (p, ell) in ((trefoil, (3, 1)), (t25, (5, 1))):
        for N in (2, 3, 4, 5):
            rep = check_obstruction(pd.base, N, p, ell)
            assert rep.passed and rep.verify()
    plus, minus, zero = orbit_change_triple(trefoil)
    assert plus.m == minus.m == zero.m == 3
    jr = jones_relations(difference_polys(plus), difference_polys(minus), difference_polys(zero), 3)
    # item (1) holds exactly with (q^m - q^-m) on the right; the opposite sign does not
    assert jr.item1["q^m - q^-m"]
    assert all(jr.item2["q^m - q^-m"].values())
    rep = check_verification(trefoil)
    assert rep.passed and set(rep.verdicts) >= {"P-1[0]", "P-2[0]", "P-3[0]", "P-1[1]", "P-2[1]",
                                                 "P-3[1]"}
    blob = json.loads(json.dumps(rep.to_json()))
    again = CriterionReport(blob["mode"], blob["prime"], blob["ell"], blob["N"], blob["verdicts"],
                            blob["witnesses"])
    assert again.verify()
    done(11)
