import math
import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from quadtors.curve import O, Curve, Point, e2_model
from quadtors.divpoly import (KENKU_MOMOSE, MAZUR, Poly, TorsionStructure, division_polynomial,
                              primitive_part, rational_roots, torsion_over_Q, torsion_points_Q,
                              two_division_cubic)
from quadtors.errors import InvalidArgument, InvalidCurve
from quadtors.exact import is_rational_square

from conftest import curve_of


def test_two_division_cubic_examples():
    assert two_division_cubic(Curve.from_ainvs((0, 0, 0, -1, 0))) == Poly((0, -4, 0, 4))
    assert rational_roots(two_division_cubic(Curve.from_ainvs((0, 0, 0, -1, 0)))) == [-1, 0, 1]
    assert two_division_cubic(Curve.from_ainvs((0, -1, 1, 0, 0))) == Poly((1, 0, -4, 4))


def test_division_polynomial_small_cases():
    E = Curve.from_ainvs((0, 0, 0, 0, 1))
    assert division_polynomial(E, 3) == Poly((0, 12, 0, 0, 3))
    assert division_polynomial(E, 3)(0) == 0
    assert division_polynomial(E, 1) == Poly((1,))
    with pytest.raises(InvalidArgument):
        division_polynomial(E, 0)


def test_primitive_degrees():
    E = Curve.from_ainvs((0, 0, 0, 4, 0))
    assert primitive_part(E, 4).degree == 6
    assert primitive_part(curve_of("15.a1"), 16).degree == 96
    F = curve_of("11.a3")
    for p in (3, 5, 7):
        assert primitive_part(F, p) == division_polynomial(F, p).integer_primitive()


def _curves_with_origin(n, seed):
    """Random curves with a6 = 0, so (0,0) is a point, kept when it has infinite order."""
    rng = random.Random(seed)
    out = []
    while len(out) < n:
        a = [rng.randint(-6, 6) for _ in range(4)] + [0]
        try:
            E = Curve.from_ainvs(a)
        except InvalidCurve:
            continue
        if E.order(Point.of(0, 0), 24) is None:
            out.append(E)
    return out


@pytest.mark.parametrize("E", _curves_with_origin(6, 11))
def test_multiplication_formula_oracle(E):
    """x(nP) = x - f_{n-1} f_{n+1} F^{+-1} / f_n^2 with F the 2-division cubic."""
    P = Point.of(0, 0)
    F = Fraction(two_division_cubic(E)(0))
    for n in range(2, 11):
        f = [division_polynomial(E, k)(0) for k in (n - 1, n, n + 1)]
        corr = f[0] * f[2] * (F if n % 2 else 1 / F) / f[1] ** 2
        assert E.mul(P, n).x == 0 - corr, n


def test_primitive_parts_reassemble():
    rng = random.Random(5)
    done = 0
    while done < 20:
        try:
            E = Curve.from_ainvs([rng.randint(-9, 9) for _ in range(5)])
        except InvalidCurve:
            continue
        done += 1
        for n in (6, 8, 9, 12):
            full = division_polynomial(E, n) * (two_division_cubic(E) if n % 2 == 0 else Poly((1,)))
            prod = Poly((1,))
            for m in range(2, n + 1):
                if n % m == 0:
                    prod = prod * primitive_part(E, m)
            assert full.integer_primitive() == prod.integer_primitive()


def _divisor_roots(f: Poly):
    """Rational root theorem by divisor enumeration."""
    cs = list(f.integer_primitive().c)
    out = set()
    if cs[0] == 0:
        out.add(Fraction(0))
        while cs[0] == 0:
            cs.pop(0)
    if len(cs) == 1:
        return sorted(out)
    for p in sympy.divisors(abs(cs[0])):
        for q in sympy.divisors(abs(cs[-1])):
            for s in (1, -1):
                r = Fraction(s * p, q)
                if Poly(cs)(r) == 0:
                    out.add(r)
    return sorted(out)


@given(st.lists(st.fractions(min_value=-20, max_value=20, max_denominator=9), min_size=1, max_size=5),
       st.lists(st.integers(-30, 30), min_size=0, max_size=4))
def test_rational_roots_against_divisor_enumeration(roots, extra):
    f = Poly((1,))
    for r in roots:
        f = f * Poly((-r, 1))
    g = Poly(tuple(extra) + (1,)) if extra else Poly((1,))
    h = f * g
    assert rational_roots(h) == _divisor_roots(h)


# --- torsion over Q, against Nagell-Lutz on an integral short model ---------

def _int_roots_cubic(A, B):
    """Integer roots of X^3 + A X + B by exact bisection on monotone pieces."""
    g = lambda x: x ** 3 + A * x + B
    bound = 1 + max(abs(A), abs(B))
    cuts = [-bound, bound]
    if A < 0:
        c = math.isqrt(-A // 3 + 1)
        cuts = [-bound, -c - 1, -c, -c + 1, c - 1, c, c + 1, bound]
    cuts = sorted(set(cuts))
    out = set()
    for lo, hi in zip(cuts, cuts[1:]):
        if g(lo) == 0:
            out.add(lo)
        if g(hi) == 0:
            out.add(hi)
        if (g(lo) < 0) == (g(hi) < 0):
            continue
        inc = g(lo) < 0
        a, b = lo, hi
        while b - a > 1:
            m = (a + b) // 2
            if (g(m) < 0) == inc:
                a = m
            else:
                b = m
        for x in (a, b):
            if g(x) == 0:
                out.add(x)
    return out


def nagell_lutz_structure(E: Curve) -> TorsionStructure:
    A, B = int(-27 * E.c4), int(-54 * E.c6)
    D = 4 * A ** 3 + 27 * B ** 2
    ys = {1}
    for p, e in sympy.factorint(abs(D)).items():
        ys = {y * p ** k for y in ys for k in range(e // 2 + 1)}
    short = Curve.from_ainvs((0, 0, 0, A, B))
    pts = [O] + [Point.of(x, 0) for x in _int_roots_cubic(A, B)]
    for y in ys:
        for x in _int_roots_cubic(A, B - y * y):
            for s in (y, -y):
                P = Point.of(x, s)
                if short.order(P, 12) is not None:
                    pts.append(P)
    n2 = sum(1 for P in pts if P is not O and P.y == 0)
    N = len(pts)
    return TorsionStructure(2, N // 2) if n2 == 3 else TorsionStructure(1, N)


@pytest.mark.parametrize("ainvs,expected", [((0, 0, 0, 0, 1), "C6"), ((0, 0, 0, -1, 0), "C2 x C2"),
                                             ((0, -1, 1, 0, 0), "C5")])
def test_torsion_examples(ainvs, expected):
    T, gens = torsion_over_Q(Curve.from_ainvs(ainvs))
    assert str(T) == expected


def test_torsion_against_nagell_lutz(corpus):
    rng = random.Random(99)
    sample = rng.sample(corpus, 40) + [e for e in corpus if e.label in ("15.a8", "54.b3", "11.a1", "14.a4")]
    for e in sample:
        E = e.curve()
        T, gens = torsion_over_Q(E)
        assert T == nagell_lutz_structure(E), e.label


def test_torsion_in_mazur_list(corpus):
    seen = set()
    for e in corpus:
        T, gens = torsion_over_Q(e.curve())
        assert T in MAZUR
        seen.add(T)
        E = e.curve()
        for P in gens:
            assert E.is_on(P)
    assert len(seen) >= 10
    assert MAZUR < KENKU_MOMOSE


def test_primitive_root_gives_exact_order(corpus):
    """A rational root of the order-n primitive part with rational y has exact order n."""
    checked = 0
    for e in corpus[::3]:
        E = e.curve()
        for n in range(2, 13):
            if n == 11:
                continue
            for x in rational_roots(primitive_part(E, n)):
                rhs = two_division_cubic(E)(x)
                s = is_rational_square(rhs)
                if s is None:
                    continue
                y = (s - E.a1 * x - E.a3) / 2
                assert E.order(Point(x, y), 16) == n
                checked += 1
    assert checked > 10


def test_nagell_lutz_integrality_on_e2_models(corpus):
    for e in corpus[:120]:
        E = e.curve()
        F = e2_model(E)
        for P in torsion_points_Q(F):
            if P is O:
                continue
            assert P.x.denominator == 1 and P.y.denominator == 1
            assert P.y == 0 or F.disc % (P.y * P.y) == 0


def test_structure_parse_and_algebra():
    T = TorsionStructure.parse("C2 x C4")
    assert T == TorsionStructure(2, 4) == TorsionStructure.parse("C2xC4")
    assert T.times(TorsionStructure(1, 3)) == TorsionStructure(2, 12)
    assert TorsionStructure(2, 12).odd() == TorsionStructure(1, 3)
    assert TorsionStructure(2, 12).two_part() == TorsionStructure(2, 4)
    assert TorsionStructure(2, 8).contains(TorsionStructure(1, 8))
    assert not TorsionStructure(1, 8).contains(TorsionStructure(2, 2))
    with pytest.raises(Exception):
        TorsionStructure(3, 4)
