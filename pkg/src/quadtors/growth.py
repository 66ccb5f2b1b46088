"""Torsion over quadratic fields K = Q(sqrt d) and the growth records built from it.

The odd part of E(K)_tors is read off from E and its quadratic twist over Q.
The 2-power part is found by searching primitive division polynomials for
roots in K.  A second, independent route (repeated halving, checked against
the classical halving criteria) is provided for cross-validation.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations

import mpmath

from .curve import O, Curve, Point, ReductionType, bad_primes, e2_model, quadratic_twist, reduction_type
from .divpoly import (
    KENKU_MOMOSE, MAZUR, Poly, TorsionStructure, _torsion_q, generators, primitive_part,
    rational_roots, torsion_order_bound, two_division_cubic, y_points,
)
from .errors import Indeterminate, InternalError, InvalidArgument, InvalidParameter, PreconditionViolation
from .exact import (
    as_rational, check_squarefree, is_prime, is_rational_square, prime_support,
    squarefree_kernel, squarefree_range,
)
from .kernels import count_points
from .quadfield import QuadElem, QuadField, is_square_in_K, sqrt_in

PREC_START = 128
PREC_CEILING = 2048


# --- roots in K -----------------------------------------------------------

@dataclass(frozen=True)
class QuadraticFactor:
    """x^2 - T x + N dividing the polynomial, with irrational roots (T +- sqrt(disc)) / 2."""

    T: Fraction
    N: Fraction
    disc: Fraction

    def split_in(self, d: int) -> Fraction | None:
        """s with disc = d s^2, when the roots lie in Q(sqrt d); no factoring needed."""
        return is_rational_square(self.disc / d)


def _strip_rational(q: Poly, roots) -> Poly:
    for r in roots:
        q = q.exact_div(Poly((-r.numerator, r.denominator)))
    return q.integer_primitive()


def _near_int(z, tol):
    """Nearest integer to the complex number z if z is within tol of it, else None."""
    if abs(z.imag) > tol:
        return None
    n = int(mpmath.nint(z.real))
    return n if abs(z.real - n) <= tol else None


def _numeric_pairs(q: Poly, ceiling: int):
    """Candidate (T, N) pairs from approximate roots, at escalating precision."""
    c = q.lc()
    cs = list(reversed(q.c))
    prec = PREC_START
    while prec <= ceiling:
        with mpmath.workprec(prec):
            try:
                roots, err = mpmath.polyroots(cs, maxsteps=(50 + 4 * q.degree) * prec // PREC_START, extraprec=prec, error=True)
            except mpmath.libmp.libhyper.NoConvergence:
                prec *= 2
                continue
            err = mpmath.mpf(err)
            big = max(abs(r) for r in roots)
            unc_t = abs(c) * 2 * err
            unc_n = abs(c) * 2 * big * err
            if max(unc_t, unc_n) >= 0.25:
                prec *= 2
                continue
            floor = mpmath.mpf(2) ** (-(prec // 3))
            tol_t, tol_n = max(16 * unc_t, floor), max(16 * unc_n, floor)
            out = []
            for r1, r2 in combinations(roots, 2):
                ct = _near_int(c * (r1 + r2), tol_t)
                if ct is None:
                    continue
                cn = _near_int(c * r1 * r2, tol_n)
                if cn is None:
                    continue
                out.append((Fraction(ct, c), Fraction(cn, c)))
            return out
    raise Indeterminate(f"root approximation unresolved at {ceiling} bits (degree {q.degree})")


@lru_cache(maxsize=8192)
def _k_factors(p: Poly, ceiling: int = PREC_CEILING):
    """Rational roots of p and every quadratic factor over Q with irrational roots.

    Independent of d, so one call serves every quadratic field.
    """
    rr = tuple(rational_roots(p))
    q = _strip_rational(p.integer_primitive(), rr)
    if q.degree >= 2:
        g = q.gcd(q.derivative())
        if g.degree > 0:
            q = q.exact_div(g).integer_primitive()
    if q.degree < 2:
        return rr, ()
    found = {}
    for T, N in _numeric_pairs(q, ceiling):
        disc = T * T - 4 * N
        if disc == 0 or is_rational_square(disc) is not None:
            continue
        if Poly((N, -T, 1)).divides(q):
            found[(T, N)] = QuadraticFactor(T, N, disc)
    return rr, tuple(found[key] for key in sorted(found))


def _roots_for(p: Poly, K: QuadField) -> list:
    rr, quads = _k_factors(p)
    out = [K(r) for r in rr]
    for f in quads:
        s = f.split_in(K.d)
        if s is not None:
            out.append(K(f.T / 2, s / 2))
            out.append(K(f.T / 2, -s / 2))
    return out


def roots_in_K(p: Poly, d) -> list[QuadElem]:
    """All roots of the rational polynomial p lying in Q(sqrt d).

    Irrational candidates come from approximate complex roots; each one is
    accepted only after x^2 - Tx + N is shown to divide p exactly.
    """
    if not isinstance(p, Poly):
        p = Poly(p)
    if not p:
        raise InvalidArgument("zero polynomial")
    if any(isinstance(c, QuadElem) for c in p.c):
        raise InvalidArgument("roots_in_K expects rational coefficients")
    return _roots_for(p, QuadField(check_squarefree(d)))


def verify_quadratic_candidate(p: Poly, T, N) -> bool:
    """Exact gate used by the root search: does x^2 - T x + N divide p?"""
    return Poly((as_rational(N), -as_rational(T), 1)).divides(p)


# --- torsion over K ------------------------------------------------------

def _is_rational(v) -> bool:
    return not isinstance(v, QuadElem) or v.b == 0


def _point_is_rational(P) -> bool:
    return P is O or (_is_rational(P.x) and _is_rational(P.y))


def _rat(v):
    return v.a if isinstance(v, QuadElem) else v


def _norm_point(P):
    # canonical form: rational coordinates as Fractions
    if P is O:
        return O
    x = _rat(P.x) if _is_rational(P.x) else P.x
    y = _rat(P.y) if _is_rational(P.y) else P.y
    return Point(x, y)


def _structure_from_counts(counts: list[int]) -> TorsionStructure:
    """2-group C_2^a x C_2^b from the number of points of exact order 2^k, k = 1, 2, ..."""
    size, a = 1, 0
    for k, c in enumerate(counts, start=1):
        size += c
        if size == 4 ** k:
            a = k
    e = size.bit_length() - 1
    if 1 << e != size:
        raise InternalError("2-power point count is not a power of 2")
    return TorsionStructure(1 << a, 1 << (e - a))


@lru_cache(maxsize=4096)
def _odd_q(curve: Curve):
    """Rational points of odd order on a curve over Q, with their orders."""
    bound = torsion_order_bound(curve)
    while bound % 2 == 0:
        bound //= 2
    pts = [(O, 1)]
    for n in (3, 5, 7, 9):
        if bound % n:
            continue
        for x in rational_roots(primitive_part(curve, n)):
            pts.extend((P, n) for P in y_points(curve, x, is_rational_square))
    return tuple(pts)


def _doubling_quartic(curve: Curve):
    # x(2Q) = num(x) / den(x)
    b2, b4, b6, b8 = curve.b2, curve.b4, curve.b6, curve.b8
    return Poly((-b8, -2 * b6, -b4, 0, 1)), Poly((b6, 2 * b4, b2, 4))


def _restricted_factor(curve: Curve, g: Poly, x_half) -> Poly:
    """Factor of g vanishing at x-coordinates of points whose double has abscissa x_half."""
    num, den = _doubling_quartic(curve)
    if _is_rational(x_half):
        h = num - den * _rat(x_half)
    else:
        tr, nm = x_half.trace(), x_half.norm()
        h = num * num - num * den * tr + den * den * nm
    return g.gcd(h)


def _twist_point_to_K(curve: Curve, K: QuadField, P):
    """Image over K of a point of the twist y^2 = x^3 + d b2 x^2 + 8 d^2 b4 x + 16 d^3 b6."""
    if P is O:
        return O
    d = K.d
    X, Y = P
    x1 = K(X / (4 * d))
    y1 = (K(0, Y / (d * d)) - curve.a1 * X / d - 4 * curve.a3) / 8
    return Point(x1, y1)


@dataclass
class KTorsion:
    """Everything computed for one (curve, d); points are grouped by their source."""

    d: int
    T_Q: TorsionStructure
    T_K: TorsionStructure
    two_points: list  # (point, order) including (O, 1)
    odd_rational: list  # (point, order) on E over Q
    odd_twist: list  # (point over K, order)
    new_orders: frozenset

    def all_points(self, curve: Curve) -> list:
        out = []
        for P2, _ in self.two_points:
            for Pa, _ in self.odd_rational:
                for Pb, _ in self.odd_twist:
                    out.append(_norm_point(curve.add(curve.add(P2, Pa), Pb)))
        return out


def two_power_points(curve: Curve, d: int, levels: int = 4) -> list:
    """Points of 2-power order over K with their orders, via K-roots of primitive parts.

    Orders 2, 4, 8 use the full primitive part.  Order 16 uses only the factor
    of the primitive part lying over the order-8 abscissas already found, which
    keeps the degree-96 polynomial out of the numeric search.
    """
    K = QuadField(d)

    def sq(z):
        return sqrt_in(K, z)

    pts = [(O, 1)]
    prev_x = []
    for k in range(1, levels + 1):
        n = 1 << k
        g = primitive_part(curve, n)
        if n < 16:
            xs = _roots_for(g, K)
        else:
            seen, xs = set(), []
            for x8 in prev_x:
                h = _restricted_factor(curve, g, x8)
                if h.degree < 1:
                    continue
                for x in _roots_for(h, K):
                    if x not in seen:
                        seen.add(x)
                        xs.append(x)
        level = []
        for x in xs:
            level.extend((_norm_point(P), n) for P in y_points(curve, x, sq))
        if not level:
            break
        pts.extend(level)
        prev_x = sorted({P.x for P, _ in level}, key=str)
    return pts


def _k_torsion(curve: Curve, d: int, check: bool = True) -> KTorsion:
    if curve.base is not None:
        raise InvalidArgument("torsion_over_K needs a curve over Q")
    d = check_squarefree(d)
    K = QuadField(d)
    T_Q, _ = _torsion_q(curve)
    two = two_power_points(curve, d)
    counts = {}
    for _, o in two[1:]:
        counts[o] = counts.get(o, 0) + 1
    T2 = _structure_from_counts([counts.get(1 << k, 0) for k in range(1, 5)])
    odd_r = list(_odd_q(curve))
    tw = quadratic_twist(curve, d)
    odd_t = [(_twist_point_to_K(curve, K, P), o) for P, o in _odd_q(tw)]
    Todd = _group_of(odd_r).times(_group_of(odd_t))
    T_K = T2.times(Todd)
    new = set()
    for P2, o2 in two:
        r2 = _point_is_rational(P2)
        for _, oa in odd_r:
            for _, ob in odd_t:
                if r2 and ob == 1:
                    continue
                new.add(math.lcm(o2, oa, ob))
    if check:
        _check_points(curve, two + odd_t)
        if T_K not in KENKU_MOMOSE:
            raise InternalError(f"{T_K} over Q(sqrt {d}) is not a possible quadratic torsion group")
        if not T_K.contains(T_Q):
            raise InternalError(f"{T_Q} does not embed in {T_K}")
        if not gt_table_allowed(T_Q, T_K):
            raise InternalError(f"growth {T_Q} -> {T_K} is not in the growth table")
    return KTorsion(d, T_Q, T_K, two, odd_r, odd_t, frozenset(new))


def _group_of(pts) -> TorsionStructure:
    orders = [o for _, o in pts]
    n = max(orders)
    if len(orders) % n:
        raise InternalError("odd point set is not a group")
    return TorsionStructure(len(orders) // n, n)


def _check_points(curve: Curve, pts):
    for P, o in pts:
        if P is O:
            continue
        if not curve.is_on(P):
            raise InternalError(f"{P} is not on the curve")
        if curve.mul(P, o) is not O:
            raise InternalError(f"{P} does not have order dividing {o}")
        for q in _prime_divisors(o):
            if curve.mul(P, o // q) is O:
                raise InternalError(f"{P} has order smaller than {o}")


def _prime_divisors(n):
    return [p for p in range(2, n + 1) if n % p == 0 and is_prime(p)]


def torsion_over_K(curve: Curve, d, check: bool = True):
    """(structure, generators) of the torsion of E over Q(sqrt d)."""
    kt = _k_torsion(curve, d, check)
    return kt.T_K, generators(curve, kt.all_points(curve))


def torsion_order_bound_K(curve: Curve, d: int, nprimes: int = 12) -> int:
    """gcd of #E(F_p) over good odd primes p split in Q(sqrt d); a multiple of #E(K)_tors."""
    g, p, used = 0, 2, 0
    while used < nprimes:
        p += 1
        if not is_prime(p) or d % p == 0 or pow(d % p, (p - 1) // 2, p) != 1:
            continue
        red = []
        for a in curve.ainvs:
            if a.denominator % p == 0:
                break
            red.append(a.numerator * pow(a.denominator, -1, p) % p)
        else:
            if curve.disc.numerator % p == 0:
                continue
            g = math.gcd(g, count_points(*red, p))
            used += 1
            if g == 1:
                break
    return g


# --- the halving criteria ---------------------------------------------------

@dataclass(frozen=True)
class FourTorsionModel:
    """y^2 = x(x^2 + A x + B), a model with a rational 2-torsion point at the origin."""

    A: Fraction
    B: Fraction
    gamma: Fraction | None = None

    def __post_init__(self):
        object.__setattr__(self, "A", as_rational(self.A))
        object.__setattr__(self, "B", as_rational(self.B))
        if self.B == 0 or self.A * self.A == 4 * self.B:
            raise InvalidParameter("singular model")

    @classmethod
    def from_curve(cls, curve: Curve, gamma=None) -> "FourTorsionModel":
        """Translate the model y^2 = x^3 + b2 x^2 + 8 b4 x + 16 b6 so the 2-torsion abscissa gamma sits at 0."""
        E2 = e2_model(curve)
        if gamma is None:
            roots = rational_roots(Poly((E2.a6, E2.a4, E2.a2, 1)))
            if not roots:
                raise PreconditionViolation("no rational 2-torsion point")
            gamma = roots[0]
        gamma = as_rational(gamma)
        if ((gamma + E2.a2) * gamma + E2.a4) * gamma + E2.a6 != 0:
            raise PreconditionViolation(f"{gamma} is not a 2-torsion abscissa")
        b2, b4 = curve.b2, curve.b4
        return cls(3 * gamma + b2, 3 * gamma * gamma + 2 * gamma * b2 + 8 * b4, gamma)

    def curve(self) -> Curve:
        return Curve(0, self.A, 0, self.B, 0)

    def map_point(self, curve: Curve, P):
        """Image of a point of the original curve on this model."""
        if P is O:
            return O
        x, y = P
        return Point(4 * x - self.gamma, 8 * y + 4 * curve.a1 * x + 4 * curve.a3)

    def discriminant_identity(self, disc) -> bool:
        return 2 ** 12 * as_rational(disc) == 16 * (self.A ** 2 * self.B ** 2 - 4 * self.B ** 3)


@dataclass(frozen=True)
class FieldCriterion:
    """A parameter and the square-free kernels of the fields it predicts (1 = already over Q)."""

    param: Fraction
    kernels: tuple

    def predicts(self, d: int) -> bool:
        return 1 in self.kernels or d in self.kernels


def _kern(x) -> int:
    return squarefree_kernel(x)[0]


def c4_over_K_criterion(m: FourTorsionModel) -> FieldCriterion | None:
    """When B = s^2, the kernels of A + 2s and A - 2s; otherwise None."""
    s = is_rational_square(m.B)
    if s is None:
        return None
    return FieldCriterion(s, (_kern(m.A + 2 * s), _kern(m.A - 2 * s)))


def c8_over_K_criterion(t) -> FieldCriterion | None:
    """For the curve y^2 + xy - ty = x^3 - tx^2: when t = -s^2, the kernels of 1 + 4s and 1 - 4s."""
    t = as_rational(t)
    if t == 0 or 1 + 16 * t == 0:
        raise InvalidParameter(f"t = {t} gives a singular curve")
    s = is_rational_square(-t)
    if s is None:
        return None
    return FieldCriterion(s, (_kern(1 + 4 * s), _kern(1 - 4 * s)))


def c16_over_K_criterion(t) -> FieldCriterion | None:
    """For the order-8 family parameter t: when t = r^2/(r^2+1), kernels of (r^4-1)(r^2 +- 2r - 1)."""
    t = as_rational(t)
    if t in (0, 1, Fraction(1, 2)):
        raise InvalidParameter(f"t = {t} is degenerate")
    r = is_rational_square(t / (1 - t))
    if r is None:
        return None
    base = r ** 4 - 1
    return FieldCriterion(r, (_kern(base * (r * r + 2 * r - 1)), _kern(base * (r * r - 2 * r - 1))))


def c8_kernels_distinct(t) -> bool | None:
    crit = c8_over_K_criterion(t)
    if crit is None:
        return None
    return crit.kernels[0] != crit.kernels[1]


def _roots_of_cubic_in(curve: Curve, field: QuadField | None) -> list:
    cubic = two_division_cubic(curve)
    if field is None:
        return list(rational_roots(cubic))
    return _roots_for(cubic, field)


def knapp_halving(curve: Curve, P, field: QuadField | int | None = None) -> bool:
    """Whether P = 2Q for some Q over the field, given the 2-torsion is split there."""
    if isinstance(field, int):
        field = QuadField(field)
    roots = _roots_of_cubic_in(curve, field)
    if len(roots) != 3:
        raise PreconditionViolation("the 2-division cubic does not split over the field")
    if P is O:
        return True
    if not curve.is_on(P):
        raise PreconditionViolation(f"{P} is not on the curve")
    x0 = P[0]
    for e in roots:
        z = x0 - e
        if field is None:
            if isinstance(z, QuadElem):
                if z.b != 0:
                    raise PreconditionViolation("point is not defined over Q")
                z = z.a
            if is_rational_square(z) is None:
                return False
        elif is_square_in_K(z if isinstance(z, QuadElem) else field(z)) is None:
            return False
    return True


# --- the halving route ------------------------------------------------------

@dataclass
class HalvingResult:
    structure: TorsionStructure
    points: list
    checks: dict = field(default_factory=dict)


def _halves(curve: Curve, K: QuadField, P) -> list:
    """All Q over K with 2Q = P."""
    num, den = _doubling_quartic(curve)
    x0 = P.x
    if _is_rational(x0):
        xs = _roots_for(num - den * _rat(x0), K)
    else:
        h = num * num - num * den * x0.trace() + den * den * x0.norm()
        xs = [x for x in _roots_for(h, K) if num(x) - den(x) * x0 == 0]
    out = []
    for x in xs:
        for Q in y_points(curve, x, lambda z: sqrt_in(K, z)):
            if curve.double(Q) == P:
                out.append(_norm_point(Q))
    return out


def two_power_by_halving(curve: Curve, d: int, check_lemmas: bool = True) -> HalvingResult:
    """The 2-power torsion over Q(sqrt d) by halving from the 2-torsion upward.

    At each level the outcome of every halving is compared with whichever of
    the classical criteria applies (Knapp when the 2-torsion is split over K,
    the B = s^2 criterion when the rational 2-torsion is cyclic, the t = -s^2
    criterion when E(Q)_tors = C4 and the t = r^2/(r^2+1) criterion when
    E(Q)_tors = C8).  A disagreement raises InternalError.
    """
    from .tate import to_tate_normal_form

    d = check_squarefree(d)
    K = QuadField(d)
    checks = {"knapp": 0, "c4": 0, "c8": 0, "c16": 0}
    roots = _roots_of_cubic_in(curve, K)
    split = len(roots) == 3
    level = []
    for e in roots:
        e = _rat(e) if _is_rational(e) else e
        level.append(_norm_point(Point(e, (-curve.a1 * e - curve.a3) / 2)))
    pts = [(O, 1)] + [(P, 2) for P in level]
    T_Q = _torsion_q(curve)[0]
    order = 2
    while level:
        if order > 16:
            raise InternalError("2-power torsion beyond order 16 over a quadratic field")
        nxt = []
        for P in level:
            H = _halves(curve, K, P)
            if check_lemmas:
                got = bool(H)
                if split:
                    checks["knapp"] += 1
                    if knapp_halving(curve, P, K) != got:
                        raise InternalError(f"Knapp criterion disagrees at {P}")
                if _point_is_rational(P):
                    Pr = Point(_rat(P.x), _rat(P.y))
                    pred = None
                    if order == 2 and T_Q.m == 1:
                        m = FourTorsionModel.from_curve(curve, 4 * Pr.x)
                        crit = c4_over_K_criterion(m)
                        pred, key = (crit is not None and crit.predicts(d)), "c4"
                    elif order == 4 and T_Q == TorsionStructure(1, 4):
                        tf, _ = to_tate_normal_form(curve, Pr)
                        if tf.c != 0:
                            raise InternalError("order-4 point with c != 0 in its Tate form")
                        crit = c8_over_K_criterion(tf.b)
                        pred, key = (crit is not None and crit.predicts(d)), "c8"
                    elif order == 8 and T_Q == TorsionStructure(1, 8):
                        tf, _ = to_tate_normal_form(curve, Pr)
                        crit = c16_over_K_criterion(tf.b / tf.c)
                        pred, key = (crit is not None and crit.predicts(d)), "c16"
                    if pred is not None:
                        checks[key] += 1
                        if pred != got:
                            raise InternalError(f"{key} criterion disagrees at {Pr} over Q(sqrt {d})")
            nxt.extend(H)
        order *= 2
        level = sorted(set(nxt), key=str)
        pts.extend((P, order) for P in level)
    counts = {}
    for _, o in pts[1:]:
        counts[o] = counts.get(o, 0) + 1
    T2 = _structure_from_counts([counts.get(1 << k, 0) for k in range(1, 5)])
    return HalvingResult(T2, pts, checks)


# --- growth table and records ---------------------------------------------

def _ts(s):
    return TorsionStructure.parse(s)


GT_TABLE = {
    _ts("C1"): {_ts(s) for s in ("C1", "C3", "C5", "C7", "C9")},
    _ts("C2"): {_ts(s) for s in ("C2", "C4", "C6", "C8", "C10", "C12", "C16",
                                  "C2xC2", "C2xC6", "C2xC10")},
    _ts("C3"): {_ts(s) for s in ("C3", "C15", "C3xC3")},
    _ts("C4"): {_ts(s) for s in ("C4", "C8", "C12", "C2xC4", "C2xC8", "C2xC12", "C4xC4")},
    _ts("C5"): {_ts(s) for s in ("C5", "C15")},
    _ts("C6"): {_ts(s) for s in ("C6", "C12", "C2xC6", "C3xC6")},
    _ts("C7"): {_ts("C7")},
    _ts("C8"): {_ts(s) for s in ("C8", "C16", "C2xC8")},
    _ts("C9"): {_ts("C9")},
    _ts("C10"): {_ts(s) for s in ("C10", "C2xC10")},
    _ts("C12"): {_ts(s) for s in ("C12", "C2xC12")},
    _ts("C2xC2"): {_ts(s) for s in ("C2xC2", "C2xC4", "C2xC6", "C2xC8", "C2xC12")},
    _ts("C2xC4"): {_ts(s) for s in ("C2xC4", "C2xC8", "C4xC4")},
    _ts("C2xC6"): {_ts(s) for s in ("C2xC6", "C2xC12")},
    _ts("C2xC8"): {_ts("C2xC8")},
}


def gt_table_allowed(T_Q: TorsionStructure, T_K: TorsionStructure) -> bool:
    if T_Q not in MAZUR:
        raise InvalidArgument(f"{T_Q} is not a torsion group over Q")
    return T_K in GT_TABLE[T_Q]


def ramified_primes(d: int) -> set[int]:
    """Primes ramifying in Q(sqrt d): those dividing d, and 2 when d is not 1 mod 4."""
    ps = {p for p in prime_support(d)}
    if d % 4 != 1:
        ps.add(2)
    return ps


@dataclass(frozen=True)
class GrowthRecord:
    curve: str
    ainvs: tuple
    d: int
    T_Q: TorsionStructure
    T_K: TorsionStructure
    new_orders: frozenset
    ramified_primes: frozenset
    reduction: dict = field(compare=False, hash=False)

    @property
    def grew(self) -> bool:
        return self.T_Q != self.T_K

    def bad(self, p: int) -> bool:
        rt = self.reduction.get(p)
        return rt is not None and rt.bad

    def additive(self, p: int) -> bool:
        rt = self.reduction.get(p)
        return rt is not None and rt.additive

    def to_dict(self) -> dict:
        return {
            "curve": self.curve,
            "ainvs": [str(a) for a in self.ainvs],
            "d": self.d,
            "T_Q": str(self.T_Q),
            "T_K": str(self.T_K),
            "new_orders": sorted(self.new_orders),
            "ramified_primes": sorted(self.ramified_primes),
            "reduction": {str(p): rt.kind for p, rt in sorted(self.reduction.items())},
        }

    @classmethod
    def from_dict(cls, data: dict) -> "GrowthRecord":
        red = {int(p): ReductionType(k, int(p)) for p, k in data["reduction"].items()}
        return cls(data["curve"], tuple(Fraction(a) for a in data["ainvs"]), int(data["d"]),
                   TorsionStructure.parse(data["T_Q"]), TorsionStructure.parse(data["T_K"]),
                   frozenset(data["new_orders"]), frozenset(data["ramified_primes"]), red)

    def __eq__(self, other):
        if not isinstance(other, GrowthRecord):
            return NotImplemented
        return self.to_dict() == other.to_dict()

    __hash__ = None


def _reductions(curve: Curve, extra) -> dict:
    red = dict(bad_primes(curve))
    for p in extra:
        if p not in red:
            red[p] = reduction_type(curve, p)
    return red


def growth_record(curve: Curve, d: int, label: str | None = None, check: bool = True) -> GrowthRecord:
    kt = _k_torsion(curve, d, check)
    ram = ramified_primes(kt.d)
    return GrowthRecord(label or str(curve), tuple(curve.ainvs), kt.d, kt.T_Q, kt.T_K,
                        kt.new_orders, frozenset(ram), _reductions(curve, ram))


def growth_scan(curve: Curve, d_bound: int, label: str | None = None) -> list[GrowthRecord]:
    """Records for every square-free d with 0 < |d| <= d_bound over which the torsion grows."""
    out = []
    for d in squarefree_range(d_bound):
        rec = growth_record(curve, d, label)
        if rec.grew:
            out.append(rec)
    return out
