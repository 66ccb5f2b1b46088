"""Polynomials over Q, division polynomials and torsion over Q."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce

from .curve import O, Curve, Point
from .errors import InternalError, InvalidArgument
from .exact import as_rational, is_prime, is_rational_square, val_p
from .kernels import count_points, roots_mod_p


def _norm(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


class Poly:
    """Dense univariate polynomial, coefficients low degree first, no trailing zeros."""

    __slots__ = ("c",)

    def __init__(self, coeffs=()):
        c = [_norm(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.c = tuple(c)

    @classmethod
    def x(cls):
        return cls((0, 1))

    @property
    def degree(self) -> int:
        return len(self.c) - 1

    def lc(self):
        return self.c[-1]

    def __bool__(self):
        return bool(self.c)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.c == other.c
        return NotImplemented

    def __hash__(self):
        return hash(self.c)

    def __repr__(self):
        return f"Poly({list(self.c)})"

    def __str__(self):
        if not self.c:
            return "0"
        terms = []
        for i in range(len(self.c) - 1, -1, -1):
            a = self.c[i]
            if a == 0:
                continue
            mon = "" if i == 0 else "x" if i == 1 else f"x^{i}"
            if mon and a == 1:
                s = mon
            elif mon and a == -1:
                s = "-" + mon
            else:
                s = f"{a}*{mon}" if mon else f"{a}"
            terms.append(s)
        return " + ".join(terms).replace("+ -", "- ")

    def __add__(self, o):
        o = _lift(o)
        n = max(len(self.c), len(o.c))
        a = self.c + (0,) * (n - len(self.c))
        b = o.c + (0,) * (n - len(o.c))
        return Poly(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self):
        return Poly(-x for x in self.c)

    def __sub__(self, o):
        return self + (-_lift(o))

    def __rsub__(self, o):
        return _lift(o) - self

    def __mul__(self, o):
        o = _lift(o)
        if not self.c or not o.c:
            return Poly()
        out = [0] * (len(self.c) + len(o.c) - 1)
        for i, a in enumerate(self.c):
            if a == 0:
                continue
            for j, b in enumerate(o.c):
                out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out, base = Poly((1,)), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def divmod(self, o: "Poly"):
        if not o:
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.c)
        q = [0] * max(len(r) - len(o.c) + 1, 0)
        lc = o.c[-1]
        for k in range(len(q) - 1, -1, -1):
            top = r[k + len(o.c) - 1]
            if top == 0:
                continue
            if isinstance(top, int) and isinstance(lc, int) and top % lc == 0:
                f = top // lc
            else:
                f = Fraction(top) / lc
            q[k] = f
            for j, b in enumerate(o.c):
                r[k + j] -= f * b
        return Poly(q), Poly(r)

    def __floordiv__(self, o):
        return self.divmod(o)[0]

    def __mod__(self, o):
        return self.divmod(o)[1]

    def exact_div(self, o: "Poly") -> "Poly":
        q, r = self.divmod(o)
        if r:
            raise InternalError("inexact polynomial division")
        return q

    def divides(self, o: "Poly") -> bool:
        """True iff self divides o exactly."""
        return not o.divmod(self)[1]

    def __call__(self, x):
        acc = 0
        for a in reversed(self.c):
            acc = acc * x + a
        return acc

    def derivative(self) -> "Poly":
        return Poly(i * a for i, a in enumerate(self.c) if i)

    def monic(self) -> "Poly":
        lc = Fraction(self.lc())
        return Poly(Fraction(a) / lc for a in self.c)

    def integer_primitive(self) -> "Poly":
        """Scaled copy with coprime integer coefficients and positive leading term."""
        if not self.c:
            return self
        fr = [as_rational(a) for a in self.c]
        den = reduce(lambda a, b: a * b // math.gcd(a, b), (f.denominator for f in fr), 1)
        ints = [int(f * den) for f in fr]
        g = reduce(math.gcd, ints)
        if ints[-1] < 0:
            g = -g
        return Poly(i // g for i in ints)

    def gcd(self, o: "Poly") -> "Poly":
        a, b = self, o
        while b:
            a, b = b, a.divmod(b)[1]
        return a.monic() if a else a


def _lift(o) -> Poly:
    return o if isinstance(o, Poly) else Poly((o,))


# --- rational roots ---------------------------------------------------

def _ratrecon(r: int, M: int, A: int, B: int):
    """Fraction a/b = r mod M with |a| <= A, 0 < b <= B, or None (needs M > 2AB)."""
    r0, r1 = M, r % M
    t0, t1 = 0, 1
    while r1 > A:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        t0, t1 = t1, t0 - q * t1
    if t1 == 0 or abs(t1) > B:
        return None
    if t1 < 0:
        r1, t1 = -r1, -t1
    return Fraction(r1, t1)


def _sqfree_mod_p(cs, p) -> bool:
    """True if the integer polynomial cs has no repeated factor mod p (lc nonzero mod p)."""
    a = [c % p for c in cs]
    b = [(i * c) % p for i, c in enumerate(cs)][1:]
    while a and a[-1] == 0:
        a.pop()
    while b and b[-1] == 0:
        b.pop()
    if not b:
        return False
    while b:
        # a mod b over F_p
        inv = pow(b[-1], p - 2, p)
        a = a[:]
        while len(a) >= len(b):
            f = a[-1] * inv % p
            shift = len(a) - len(b)
            for j, c in enumerate(b):
                a[shift + j] = (a[shift + j] - f * c) % p
            a.pop()
            while a and a[-1] == 0:
                a.pop()
        a, b = b, a
    return len(a) == 1


def _eval_mod(cs, x, M):
    acc = 0
    for c in reversed(cs):
        acc = (acc * x + c) % M
    return acc


def _good_prime(cs, tries=60):
    lc = cs[-1]
    p = 3
    while tries:
        p += 2
        if not is_prime(p) or lc % p == 0:
            continue
        tries -= 1
        if _sqfree_mod_p(cs, p):
            return p
    return None


def rational_roots(f: Poly) -> list[Fraction]:
    """All rational roots of f, found exactly.

    A simple root mod a suitable prime p is lifted p-adically far enough that
    rational reconstruction within the bounds set by the leading and constant
    coefficients is unique; every candidate is then checked by evaluation.
    """
    if not f:
        raise InvalidArgument("zero polynomial")
    cs = list(f.integer_primitive().c)
    roots = []
    if cs[0] == 0:
        roots.append(Fraction(0))
        while cs[0] == 0:
            cs.pop(0)
    if len(cs) == 1:
        return roots
    p = _good_prime(cs)
    if p is None:
        # repeated factors: work with the square-free part instead
        h = Poly(cs)
        cs = list(h.exact_div(h.gcd(h.derivative())).integer_primitive().c)
        if len(cs) == 1:
            return roots
        p = _good_prime(cs)
    if len(cs) == 2:
        roots.append(Fraction(-cs[0], cs[1]))
        return sorted(set(roots))
    dcs = [i * c for i, c in enumerate(cs)][1:]
    lc, a0 = abs(cs[-1]), abs(cs[0])
    bound = 2 * a0 * lc + 1
    for r in roots_mod_p(cs, p):
        M = p
        while M < bound:
            M = M * M
            r = (r - _eval_mod(cs, r, M) * pow(_eval_mod(dcs, r, M), -1, M)) % M
        q = _ratrecon(r, M, a0, lc)
        if q is not None and Poly(cs)(q) == 0:
            roots.append(q)
    return sorted(set(roots))


# --- division polynomials ---------------------------------------------

def two_division_cubic(curve: Curve) -> Poly:
    """4x^3 + b2 x^2 + 2 b4 x + b6, the square of 2y + a1 x + a3."""
    return Poly((curve.b6, 2 * curve.b4, curve.b2, 4))


def _key(curve: Curve):
    return (curve.b2, curve.b4, curve.b6, curve.b8)


@lru_cache(maxsize=512)
def _fseq(key, n: int) -> tuple:
    b2, b4, b6, b8 = key
    F = Poly((b6, 2 * b4, b2, 4))
    F2 = F * F
    f = [Poly(), Poly((1,)), Poly((1,)),
         Poly((b8, 3 * b6, 3 * b4, b2, 3)),
         Poly((b4 * b8 - b6 * b6, b2 * b8 - b4 * b6, 10 * b8, 10 * b6, 5 * b4, b2, 2))]
    for k in range(5, n + 1):
        m = k // 2
        if k % 2:
            if m % 2 == 0:
                f.append(F2 * f[m + 2] * f[m] ** 3 - f[m - 1] * f[m + 1] ** 3)
            else:
                f.append(f[m + 2] * f[m] ** 3 - F2 * f[m - 1] * f[m + 1] ** 3)
        else:
            f.append(f[m] * (f[m + 2] * f[m - 1] ** 2 - f[m - 2] * f[m + 1] ** 2))
    return tuple(f)


def division_polynomial(curve: Curve, n: int) -> Poly:
    """The x-part f_n of psi_n: psi_n = f_n for odd n and psi_n = (2y + a1 x + a3) f_n for even n."""
    if n < 1:
        raise InvalidArgument("n must be positive")
    return _fseq(_key(curve), max(n, 4))[n]


@lru_cache(maxsize=512)
def _prim(key, n: int) -> Poly:
    b2, b4, b6, b8 = key
    F = Poly((b6, 2 * b4, b2, 4))
    f = _fseq(key, max(n, 4))[n]
    g = f * F if n % 2 == 0 else f
    for m in range(2, n):
        if n % m == 0:
            g = g.exact_div(_prim(key, m))
    return g.integer_primitive()


def primitive_part(curve: Curve, n: int) -> Poly:
    """Integer-scaled polynomial whose roots are the x-coordinates of points of exact order n."""
    if n < 2:
        raise InvalidArgument("n must be at least 2")
    return _prim(_key(curve), n)


# --- torsion structures -------------------------------------------------

@dataclass(frozen=True, order=True)
class TorsionStructure:
    """C_m x C_n with m | n."""

    m: int
    n: int

    def __post_init__(self):
        if self.m < 1 or self.n < 1 or self.n % self.m:
            raise InvalidArgument(f"invalid torsion structure ({self.m}, {self.n})")

    @classmethod
    def cyclic(cls, n: int) -> "TorsionStructure":
        return cls(1, n)

    @classmethod
    def parse(cls, s: str) -> "TorsionStructure":
        parts = [p.strip().lstrip("C") for p in s.replace("×", "x").split("x")]
        if len(parts) == 1:
            return cls(1, int(parts[0]))
        return cls(int(parts[0]), int(parts[1]))

    @property
    def order(self) -> int:
        return self.m * self.n

    def __str__(self):
        return f"C{self.n}" if self.m == 1 else f"C{self.m} x C{self.n}"

    def part(self, primes) -> "TorsionStructure":
        """The sub-structure supported on the given primes."""
        def keep(k):
            out = 1
            for p in primes:
                while k % p == 0:
                    k //= p
                    out *= p
            return out
        return TorsionStructure(keep(self.m), keep(self.n))

    def odd(self) -> "TorsionStructure":
        m, n = self.m, self.n
        while m % 2 == 0:
            m //= 2
        while n % 2 == 0:
            n //= 2
        return TorsionStructure(m, n)

    def two_part(self) -> "TorsionStructure":
        return TorsionStructure(self.m // self.odd().m, self.n // self.odd().n)

    def times(self, other: "TorsionStructure") -> "TorsionStructure":
        """Invariant factors of the direct product (at most two factors required)."""
        factors = [self.m, self.n, other.m, other.n]
        inv = _invariant_factors(factors)
        if len(inv) > 2:
            raise InvalidArgument(f"{self} x {other} needs three generators")
        while len(inv) < 2:
            inv.insert(0, 1)
        return TorsionStructure(*inv)

    def contains(self, other: "TorsionStructure") -> bool:
        """Whether other is isomorphic to a subgroup of self."""
        return _le_chain(other, self)


def _le_chain(a: TorsionStructure, b: TorsionStructure) -> bool:
    # subgroup test for rank-2 abelian groups: compare p-parts componentwise
    for p in set(_primes_of(a.n)) | set(_primes_of(b.n)):
        am, an = _pv(a.m, p), _pv(a.n, p)
        bm, bn = _pv(b.m, p), _pv(b.n, p)
        if am > bm or an > bn:
            return False
    return True


def _pv(n, p):
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def _primes_of(n):
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def _invariant_factors(orders) -> list[int]:
    """Invariant factors of a product of cyclic groups, ascending, without 1s."""
    by_p = {}
    for k in orders:
        for p in _primes_of(k):
            by_p.setdefault(p, []).append(p ** _pv(k, p))
    width = max((len(v) for v in by_p.values()), default=0)
    inv = [1] * width
    for p, pows in by_p.items():
        pows.sort(reverse=True)
        for i, q in enumerate(pows):
            inv[width - 1 - i] *= q
    return [k for k in inv if k > 1]


def structure_from_orders(orders: list[int]) -> TorsionStructure:
    """Structure of a finite abelian group of rank <= 2 from the orders of all its elements."""
    size = len(orders)
    n = max(orders)
    if size % n:
        raise InternalError("point set is not a group")
    return TorsionStructure(size // n, n)


MAZUR = frozenset([TorsionStructure(1, n) for n in (1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12)] +
                  [TorsionStructure(2, n) for n in (2, 4, 6, 8)])

KENKU_MOMOSE = frozenset([TorsionStructure(1, n) for n in list(range(1, 17)) + [18]] +
                         [TorsionStructure(2, 2 * n) for n in range(1, 7)] +
                         [TorsionStructure(3, 3), TorsionStructure(3, 6), TorsionStructure(4, 4)])


# --- torsion over Q ------------------------------------------------------

def _reduce_mod(x: Fraction, p: int):
    if x.denominator % p == 0:
        return None
    return x.numerator * pow(x.denominator, -1, p) % p


def torsion_order_bound(curve: Curve, nprimes: int = 12) -> int:
    """gcd of #E(F_p) over good odd primes; the rational torsion order divides it."""
    g, p, used = 0, 2, 0
    disc = curve.disc
    while used < nprimes:
        p += 1
        if not is_prime(p):
            continue
        red = [_reduce_mod(a, p) for a in curve.ainvs]
        if None in red or val_p(disc, p) != 0:
            continue
        g = math.gcd(g, count_points(*red, p))
        used += 1
        if g == 1:
            break
    return g


def y_points(curve: Curve, x, sqrt_fn) -> list:
    """Points with abscissa x, using sqrt_fn on the completed square 4x^3 + b2 x^2 + 2 b4 x + b6."""
    rhs = ((4 * x + curve.b2) * x + 2 * curve.b4) * x + curve.b6
    w = sqrt_fn(rhs)
    if w is None:
        return []
    base = -curve.a1 * x - curve.a3
    if w == 0:
        return [Point(x, base / 2)]
    return [Point(x, (base + w) / 2), Point(x, (base - w) / 2)]


def points_to_structure(curve: Curve, points) -> TorsionStructure:
    orders = [curve.order(P, 64) for P in points]
    if None in orders:
        raise InternalError("torsion point of unexpected order")
    return structure_from_orders(orders)


def generators(curve: Curve, points) -> list:
    """A minimal generating list for the group formed by points (which includes O)."""
    pts = [P for P in points if P is not O]
    if not pts:
        return []
    order = {P: curve.order(P, 64) for P in pts}
    g1 = max(pts, key=lambda P: (order[P], str(P)))
    n = order[g1]
    if n == len(pts) + 1:
        return [g1]
    span1 = set()
    Q = O
    for _ in range(n):
        span1.add(Q)
        Q = curve.add(Q, g1)
    size = len(pts) + 1
    for g2 in sorted(pts, key=lambda P: (order[P], str(P))):
        if g2 in span1:
            continue
        k, Q = 0, g2
        while Q not in span1:
            k += 1
            Q = curve.add(Q, g2)
        if len(span1) * (k + 1) == size:
            return [g1, g2]
    raise InternalError("group needs more than two generators")


@lru_cache(maxsize=2048)
def _torsion_q(curve: Curve):
    bound = torsion_order_bound(curve)
    pts = [O]
    for n in (2, 3, 4, 5, 6, 7, 8, 9, 10, 12):
        if bound % n:
            continue
        for x in rational_roots(primitive_part(curve, n)):
            pts.extend(y_points(curve, x, is_rational_square))
    T = points_to_structure(curve, pts)
    if T not in MAZUR:
        raise InternalError(f"torsion {T} over Q is not in Mazur's list")
    return T, tuple(pts)


def torsion_over_Q(curve: Curve):
    """(structure, generators) of E(Q)_tors."""
    if curve.base is not None:
        raise InvalidArgument("torsion_over_Q needs a curve over Q")
    T, pts = _torsion_q(curve)
    return T, generators(curve, pts)


def torsion_points_Q(curve: Curve) -> tuple:
    return _torsion_q(curve)[1]
