import random
from fractions import Fraction
from math import gcd

import pytest
import sympy
from hypothesis import assume, given, strategies as st

from quadtors.curve import O, Curve, Point
from quadtors.divpoly import Poly, TorsionStructure, primitive_part, torsion_over_Q, torsion_points_Q, y_points
from quadtors.errors import Indeterminate, InvalidArgument, InvalidParameter
from quadtors.exact import squarefree_range
from quadtors.growth import (GT_TABLE, FourTorsionModel, GrowthRecord, _halves, _k_factors, _k_torsion,
                             c4_over_K_criterion, c8_kernels_distinct, c8_over_K_criterion,
                             c16_over_K_criterion, growth_record, growth_scan, gt_table_allowed,
                             knapp_halving, ramified_primes, roots_in_K, torsion_over_K,
                             two_power_by_halving, verify_quadratic_candidate)
from quadtors.quadfield import QuadField, sqrt_in
from quadtors.tate import TateForm, tate_curve_for_order, to_tate_normal_form

from conftest import CITED_GROWTH, curve_of

C = TorsionStructure.parse
X = sympy.Symbol("x")


# --- roots in K --------------------------------------------------------------

def test_roots_in_K_examples():
    K = QuadField(-5)
    assert sorted(roots_in_K(Poly((5, 0, 1)), -5), key=str) == sorted([K(0, 1), K(0, -1)], key=str)
    assert roots_in_K(Poly((-2, 0, 1)), 3) == []
    assert sorted(r.a for r in roots_in_K(Poly((0, -4, 0, 4)), 7)) == [-1, 0, 1]


def test_roots_in_K_rejects_zero_polynomial():
    with pytest.raises(InvalidArgument):
        roots_in_K(Poly(()), 2)


@st.composite
def factored_polys(draw):
    d = draw(st.sampled_from([-7, -3, -1, 2, 3, 5, 6]))
    p = Poly((1,))
    for r in draw(st.lists(st.fractions(min_value=-9, max_value=9, max_denominator=4), max_size=2)):
        p = p * Poly((-r, 1))
    for _ in range(draw(st.integers(1, 2))):
        T = draw(st.integers(-12, 12))
        N = draw(st.integers(-12, 12))
        p = p * Poly((N, -T, 1))
    if draw(st.booleans()):
        p = p * Poly((draw(st.integers(-5, 5)), 0, 0, 1))
    return p, d


@given(factored_polys())
def test_roots_in_K_against_sympy(pd):
    p, d = pd
    K = QuadField(d)
    got = {(r.a, r.b) for r in roots_in_K(p, d)}
    poly = sum(sympy.Rational(c.numerator, c.denominator) * X ** i for i, c in enumerate(p.c))
    r = sympy.sqrt(d)
    want = set()
    for f, _ in sympy.factor_list(poly, extension=r)[1]:
        if sympy.degree(f, X) == 1:
            root = sympy.expand(sympy.solve(f, X)[0])
            a, b = root.as_independent(r, as_Add=True)
            b = sympy.nsimplify(b / r) if b != 0 else 0
            want.add((Fraction(str(a)), Fraction(str(b))))
    assert got == want
    for z in roots_in_K(p, d):
        assert sum((c * z ** i for i, c in enumerate(p.c)), K(0)) == 0


def test_quadratic_candidate_gate():
    p = Poly((5, 0, 1)) * Poly((-3, 1))
    assert verify_quadratic_candidate(p, 0, 5)
    assert not verify_quadratic_candidate(p, 0, 6)
    assert not verify_quadratic_candidate(p, 1, 5)


def test_indeterminate_is_raised_not_swallowed():
    # roots of size 1e60 next to small ones need more than 128 bits
    p = Poly((2, -10 ** 60, 1)) * Poly((3, 0, 1)) * Poly((-7, 1, 1))
    with pytest.raises(Indeterminate):
        _k_factors(p, 128)
    rr, quads = _k_factors(p)
    assert {(q.T, q.N) for q in quads} == {(10 ** 60, 2), (0, 3), (-1, -7)}


# --- torsion over K ---------------------------------------------------------

@pytest.mark.parametrize("label,d,expected", CITED_GROWTH)
def test_cited_growth(label, d, expected):
    T, gens = torsion_over_K(curve_of(label), d)
    assert str(T) == expected
    E = curve_of(label)
    for P in gens:
        assert E.is_on(P)


def test_three_torsion_examples():
    assert torsion_over_K(curve_of("19.a2"), -3)[0] == C("C3 x C3")
    assert torsion_over_K(curve_of("19.a1"), -3)[0] == C("C3")
    assert torsion_over_Q(curve_of("19.a1"))[0] == C("C1")
    rec = growth_record(curve_of("175.b3"), -15)
    assert 3 in rec.new_orders and rec.T_K.part([3]).order > rec.T_Q.part([3]).order


def test_176a1_gains_three_torsion():
    # trivial over Q, C3 over exactly one field with |d| <= 30
    recs = growth_scan(curve_of("176.a1"), 30)
    assert [(r.d, r.T_Q, r.T_K) for r in recs] == [(3, C("C1"), C("C3"))]


def test_2_ramified_growth_without_2_dividing_d():
    # C4 appears over Q(i) although the curve has good reduction at 2
    rec = growth_record(curve_of("17.a2"), -1)
    assert rec.T_Q == C("C2 x C2") and rec.T_K == C("C2 x C4")
    assert 2 in rec.ramified_primes and not rec.bad(2)


def test_y2_x3_minus_x_over_gaussian_field():
    assert torsion_over_K(Curve.from_ainvs((0, 0, 0, -1, 0)), -1)[0] == C("C2 x C4")


def _exact_order_count(T: TorsionStructure, n: int) -> int:
    return sum(1 for a in range(T.m) for b in range(T.n)
               if _ord(a, T.m, b, T.n) == n)


def _ord(a, m, b, N):
    oa = m // gcd(a, m)
    ob = N // gcd(b, N)
    return oa * ob // gcd(oa, ob)


def _points_of_exact_order(curve, d, n):
    K = QuadField(d)
    out = 0
    for x in roots_in_K(primitive_part(curve, n), d):
        out += len(y_points(curve, x, lambda z: sqrt_in(K, z)))
    return out


def test_odd_part_against_division_polynomials(corpus):
    """The twist decomposition agrees with a direct K-root search for n = 3, 5, 7, 9."""
    rng = random.Random(314)
    ds = squarefree_range(30)
    picks = rng.sample(corpus, 14) + [e for e in corpus if e.label in ("19.a2", "50.b1", "175.b3", "80.b1", "54.b3", "11.a1")]
    for e in picks:
        E = e.curve()
        d = -3 if e.label in ("19.a2",) else (-15 if e.label in ("50.b1", "175.b3") else rng.choice(ds))
        T = torsion_over_K(E, d)[0]
        for n in (3, 5, 7, 9):
            assert _points_of_exact_order(E, d, n) == _exact_order_count(T, n), (e.label, d, n)
        # order 15 is determined by the counts for 3 and 5 in an abelian group
        assert _exact_order_count(T, 15) == _exact_order_count(T, 3) * _exact_order_count(T, 5)


def test_no_growth_from_c2_x_c8():
    E = Curve.from_ainvs((1, 0, 0, -1070, 7812))
    assert torsion_over_Q(E)[0] == C("C2 x C8")
    assert growth_scan(E, 30) == []


def test_growth_scan_examples():
    recs = growth_scan(curve_of("19.a2"), 10)
    assert any(r.d == -3 and r.T_K == C("C3 x C3") for r in recs)
    recs = growth_scan(curve_of("80.b1"), 10)
    assert any(r.d == 3 and r.T_K == C("C6") for r in recs)


# --- the classical criteria ---------------------------------------------------

def test_c4_examples():
    crit = c4_over_K_criterion(FourTorsionModel(3, 1))
    assert crit.param == 1 and set(crit.kernels) == {5, 1}
    E = FourTorsionModel(3, 1).curve()
    assert E.double(Point.of(-1, 1)) == (0, 0)
    crit = c4_over_K_criterion(FourTorsionModel(0, 4))
    assert crit.param == 2 and set(crit.kernels) == {1, -1}
    assert FourTorsionModel(0, 4).curve().double(Point.of(2, 4)) == (0, 0)
    assert c4_over_K_criterion(FourTorsionModel(1, 3)) is None


def test_four_torsion_model_discriminant_identity(corpus):
    n = 0
    for e in corpus:
        E = e.curve()
        try:
            m = FourTorsionModel.from_curve(E)
        except Exception:
            continue
        n += 1
        assert m.discriminant_identity(E.disc)
        for P in torsion_points_Q(E):
            assert m.curve().is_on(m.map_point(E, P))
    assert n > 100


def test_knapp_examples():
    E = Curve.from_ainvs((0, 0, 0, -1, 0))
    assert knapp_halving(E, Point.of(0, 0)) is False
    assert knapp_halving(E, Point.of(0, 0), -1) is True
    assert knapp_halving(E, Point.of(1, 0), -1) is False
    assert torsion_over_K(E, -1)[0].contains(C("C4"))


def test_c8_examples():
    assert set(c8_over_K_criterion(-1).kernels) == {5, -3}
    assert set(c8_over_K_criterion(Fraction(-1, 4)).kernels) == {3, -1}
    assert c8_over_K_criterion(3) is None
    E = TateForm(-1, 0).curve()
    for d in (5, -3):
        assert torsion_over_K(E, d)[0].contains(C("C8"))
    E = TateForm(Fraction(-1, 4), 0).curve()
    for d in (3, -1):
        assert torsion_over_K(E, d)[0].contains(C("C8"))


def test_c16_examples():
    crit = c16_over_K_criterion(Fraction(4, 5))
    assert crit.param == 2 and set(crit.kernels) == {105, -15}
    with pytest.raises(InvalidParameter):
        c16_over_K_criterion(Fraction(1, 2))
    assert c16_over_K_criterion(Fraction(2, 3)) is None
    E = tate_curve_for_order(8, Fraction(4, 5)).curve()
    assert torsion_over_K(E, -15)[0].contains(C("C16"))


@given(st.fractions(min_value=-5, max_value=5, max_denominator=40).filter(lambda s: s != 0))
def test_c8_kernels_distinct_when_rational_torsion_is_c4(s):
    t = -s * s
    assume(1 + 16 * t != 0)
    E = TateForm(t, 0).curve()
    if torsion_over_Q(E)[0] == C("C4"):
        assert c8_kernels_distinct(t)


def test_c8_equal_kernels_force_full_two_torsion():
    # 1 - 16 s^2 a square makes both kernels agree; the rational torsion is then not C4
    s = Fraction(3, 20)
    assert c8_over_K_criterion(-s * s).kernels == (10, 10)
    assert torsion_over_Q(TateForm(-s * s, 0).curve())[0].m == 2


@pytest.mark.parametrize("label,d", [("15.a5", 5), ("21.a5", -3), ("42.a4", 2), ("48.a3", 3)])
def test_c8_shape_fails_for_c2_x_c4(label, d):
    """With E(Q) = C2 x C4 the order-8 growth need not come from t = -s^2."""
    E = curve_of(label)
    assert torsion_over_Q(E)[0] == C("C2 x C4")
    assert torsion_over_K(E, d)[0] == C("C2 x C8")
    ts = {to_tate_normal_form(E, P)[0].b for P in torsion_points_Q(E) if P is not O and E.order(P) == 4}
    assert ts and all(c8_over_K_criterion(t) is None for t in ts)


def _order_points(E, n):
    return [P for P in torsion_points_Q(E) if P is not O and E.order(P) == n]


def test_criteria_predict_halvings(small_corpus):
    """A predicted kernel gives a halving over that field; no prediction means none for |d| <= 30."""
    ds = squarefree_range(30)
    seen = {"c4": 0, "c8": 0, "c16": 0}
    for e in small_corpus:
        E = e.curve()
        T = torsion_over_Q(E)[0]
        if T.m != 1 or T.n % 2:
            continue
        if T.two_part() == C("C2"):
            P = _order_points(E, 2)[0]
            crit = c4_over_K_criterion(FourTorsionModel.from_curve(E, 4 * P.x))
            key = "c4"
        elif T == C("C4"):
            P = _order_points(E, 4)[0]
            crit = c8_over_K_criterion(to_tate_normal_form(E, P)[0].b)
            key = "c8"
        elif T == C("C8"):
            P = _order_points(E, 8)[0]
            tf = to_tate_normal_form(E, P)[0]
            crit = c16_over_K_criterion(tf.b / tf.c)
            key = "c16"
        else:
            continue
        seen[key] += 1
        if crit is None:
            assert all(not _halves(E, QuadField(d), P) for d in ds), e.label
        else:
            for d0 in crit.kernels:
                if d0 != 1:
                    assert _halves(E, QuadField(d0), P), (e.label, d0)
    assert seen["c4"] > 20 and seen["c8"] > 5 and seen["c16"] > 0


def test_halving_route_matches_root_search():
    for label, d, _ in CITED_GROWTH + [("17.a2", -1, None), ("15.a5", 5, None), ("21.a1", -1, None)]:
        E = curve_of(label)
        res = two_power_by_halving(E, d)
        assert res.structure == _k_torsion(E, d).T_K.two_part(), (label, d)


# --- table and records ------------------------------------------------------------

def test_gt_table_examples():
    assert gt_table_allowed(C("C7"), C("C7"))
    assert not gt_table_allowed(C("C7"), C("C14"))
    assert gt_table_allowed(C("C2"), C("C16"))
    assert GT_TABLE[C("C2 x C8")] == frozenset({C("C2 x C8")}) or list(GT_TABLE[C("C2 x C8")]) == [C("C2 x C8")]
    with pytest.raises(InvalidArgument):
        gt_table_allowed(C("C11"), C("C11"))


def test_ramified_primes():
    assert ramified_primes(-1) == {2}
    assert ramified_primes(5) == {5}
    assert ramified_primes(-15) == {3, 5, 2} - {2} | ({2} if -15 % 4 != 1 else set())
    assert ramified_primes(6) == {2, 3}
    assert ramified_primes(-3) == {3}


def test_growth_record_roundtrip():
    rec = growth_record(curve_of("80.b1"), 3, "80.b1")
    assert rec.grew and rec.T_K == C("C6")
    assert GrowthRecord.from_dict(rec.to_dict()) == rec
    assert rec.additive(2) and not rec.bad(3)


def test_every_record_in_table(small_corpus):
    for e in small_corpus[::5]:
        for r in growth_scan(e.curve(), 15, e.label):
            assert gt_table_allowed(r.T_Q, r.T_K)
            assert r.T_K.contains(r.T_Q)
