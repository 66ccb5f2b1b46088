"""Weierstrass curves, the group law, changes of variables and reduction types."""
from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import NamedTuple

from .errors import InvalidArgument, InvalidCurve, InvalidPoint
from .exact import as_rational, check_squarefree, prime_support, val_p
from .quadfield import QuadElem, QuadField


class Identity:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "O"

    def __reduce__(self):
        return (Identity, ())


O = Identity()


class Point(NamedTuple):
    x: object
    y: object

    @classmethod
    def of(cls, x, y) -> "Point":
        return cls(_coef(x), _coef(y))

    def __str__(self):
        return f"({self.x}, {self.y})"


class Invariants(NamedTuple):
    b2: Fraction
    b4: Fraction
    b6: Fraction
    b8: Fraction
    c4: Fraction
    c6: Fraction
    disc: Fraction
    j: Fraction


def _coef(v):
    return v if isinstance(v, QuadElem) else as_rational(v)


@dataclass(frozen=True)
class Curve:
    """y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over Q (base None) or a quadratic field."""

    a1: Fraction
    a2: Fraction
    a3: Fraction
    a4: Fraction
    a6: Fraction
    base: QuadField | None = None

    def __post_init__(self):
        for name in ("a1", "a2", "a3", "a4", "a6"):
            object.__setattr__(self, name, _coef(getattr(self, name)))
        if self.disc == 0:
            raise InvalidCurve(f"singular curve {self.ainvs}")

    @classmethod
    def from_ainvs(cls, ainvs, base=None) -> "Curve":
        if len(ainvs) != 5:
            raise InvalidArgument("need five Weierstrass coefficients")
        return cls(*ainvs, base=base)

    @property
    def ainvs(self) -> tuple:
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    def is_integral(self) -> bool:
        return all(isinstance(a, Fraction) and a.denominator == 1 for a in self.ainvs)

    @cached_property
    def b2(self):
        return self.a1 * self.a1 + 4 * self.a2

    @cached_property
    def b4(self):
        return 2 * self.a4 + self.a1 * self.a3

    @cached_property
    def b6(self):
        return self.a3 * self.a3 + 4 * self.a6

    @cached_property
    def b8(self):
        a1, a2, a3, a4, a6 = self.ainvs
        return a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4

    @cached_property
    def c4(self):
        return self.b2 * self.b2 - 24 * self.b4

    @cached_property
    def c6(self):
        return -self.b2 ** 3 + 36 * self.b2 * self.b4 - 216 * self.b6

    @cached_property
    def disc(self):
        b2, b4, b6, b8 = self.b2, self.b4, self.b6, self.b8
        return -b2 * b2 * b8 - 8 * b4 ** 3 - 27 * b6 * b6 + 9 * b2 * b4 * b6

    @cached_property
    def j(self):
        return self.c4 ** 3 / self.disc

    def invariants(self) -> Invariants:
        return Invariants(self.b2, self.b4, self.b6, self.b8, self.c4, self.c6, self.disc, self.j)

    def __str__(self):
        return "[" + ",".join(str(a) for a in self.ainvs) + "]"

    # --- points -------------------------------------------------------

    def is_on(self, P) -> bool:
        if P is O:
            return True
        x, y = P
        a1, a2, a3, a4, a6 = self.ainvs
        return y * y + a1 * x * y + a3 * y - (x * x * x + a2 * x * x + a4 * x + a6) == 0

    def check(self, P):
        if P is not O:
            for c in P:
                if isinstance(c, QuadElem) and (self.base is None or c.field != self.base):
                    if c.b != 0:
                        raise InvalidPoint(f"coordinate {c} not in the base field")
        if not self.is_on(P):
            raise InvalidPoint(f"{P} is not on {self}")
        return P

    def neg(self, P):
        if P is O:
            return O
        x, y = map(_coef, P)
        return Point(x, -y - self.a1 * x - self.a3)

    def add(self, P, Q):
        if P is O:
            return Q
        if Q is O:
            return P
        a1, a2, a3, a4, a6 = self.ainvs
        x1, y1 = map(_coef, P)
        x2, y2 = map(_coef, Q)
        if x1 == x2:
            if y1 + y2 + a1 * x2 + a3 == 0:
                return O
            den = 2 * y1 + a1 * x1 + a3
            lam = (3 * x1 * x1 + 2 * a2 * x1 + a4 - a1 * y1) / den
            nu = (-x1 * x1 * x1 + a4 * x1 + 2 * a6 - a3 * y1) / den
        else:
            lam = (y2 - y1) / (x2 - x1)
            nu = (y1 * x2 - y2 * x1) / (x2 - x1)
        x3 = lam * lam + a1 * lam - a2 - x1 - x2
        y3 = -(lam + a1) * x3 - nu - a3
        return Point(x3, y3)

    def double(self, P):
        return self.add(P, P)

    def mul(self, P, k: int):
        if k < 0:
            return self.mul(self.neg(P), -k)
        R, A = O, P
        while k:
            if k & 1:
                R = self.add(R, A)
            A = self.add(A, A)
            k >>= 1
        return R

    def order(self, P, bound: int = 64) -> int | None:
        """Exact order of P if it is at most ``bound``, else None."""
        Q = P
        for n in range(1, bound + 1):
            if Q is O:
                return n
            Q = self.add(Q, P)
        return None


def invariants(curve: Curve) -> Invariants:
    return curve.invariants()


def point_op(curve: Curve, P, Q=None, op: str = "add", k: int | None = None):
    curve.check(P)
    if op == "add":
        return curve.add(P, curve.check(Q))
    if op == "neg":
        return curve.neg(P)
    if op == "double":
        return curve.double(P)
    if op == "mul":
        if k is None:
            raise InvalidArgument("mul needs k")
        return curve.mul(P, k)
    raise InvalidArgument(f"unknown op {op!r}")


@dataclass(frozen=True)
class VarChange:
    """x = u^2 x' + r,  y = u^3 y' + s u^2 x' + t."""

    u: Fraction
    r: Fraction = Fraction(0)
    s: Fraction = Fraction(0)
    t: Fraction = Fraction(0)

    def __post_init__(self):
        for name in ("u", "r", "s", "t"):
            object.__setattr__(self, name, as_rational(getattr(self, name)))
        if self.u == 0:
            raise InvalidArgument("u must be nonzero")

    def then(self, other: "VarChange") -> "VarChange":
        """The change equal to applying self first, then other."""
        u, r, s, t = self.u, self.r, self.s, self.t
        return VarChange(u * other.u, r + u * u * other.r, s + u * other.s,
                         t + u * u * s * other.r + u ** 3 * other.t)

    def inverse(self) -> "VarChange":
        u, r, s, t = self.u, self.r, self.s, self.t
        return VarChange(1 / u, -r / u ** 2, -s / u, (r * s - t) / u ** 3)

    def map_point(self, P):
        if P is O:
            return O
        x, y = P
        u, r, s, t = self.u, self.r, self.s, self.t
        xn = (x - r) / (u * u)
        return Point(xn, (y - s * (x - r) - t) / u ** 3)


def transform(curve: Curve, ch: VarChange) -> Curve:
    a1, a2, a3, a4, a6 = curve.ainvs
    u, r, s, t = ch.u, ch.r, ch.s, ch.t
    n1 = (a1 + 2 * s) / u
    n2 = (a2 - s * a1 + 3 * r - s * s) / u ** 2
    n3 = (a3 + r * a1 + 2 * t) / u ** 3
    n4 = (a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t) / u ** 4
    n6 = (a6 + r * a4 + r * r * a2 + r ** 3 - t * a3 - t * t - r * t * a1) / u ** 6
    return Curve(n1, n2, n3, n4, n6, base=curve.base)


def apply_change(curve: Curve, ch: VarChange):
    """Transformed curve and the point map from the old model to the new one."""
    return transform(curve, ch), ch.map_point


def e2_change(curve: Curve) -> VarChange:
    """Change to the model y^2 = x^3 + b2 x^2 + 8 b4 x + 16 b6."""
    return VarChange(Fraction(1, 2), 0, -curve.a1 / 2, -curve.a3 / 2)


def e2_model(curve: Curve) -> Curve:
    return Curve(0, curve.b2, 0, 8 * curve.b4, 16 * curve.b6, base=curve.base)


def quadratic_twist(curve: Curve, d) -> Curve:
    """y^2 = x^3 + d b2 x^2 + 8 d^2 b4 x + 16 d^3 b6."""
    if curve.base is not None:
        raise InvalidArgument("twists are taken of curves over Q")
    d = check_squarefree(d)
    return Curve(0, d * curve.b2, 0, 8 * d * d * curve.b4, 16 * d ** 3 * curve.b6)


# --- reduction ---------------------------------------------------------

@dataclass(frozen=True)
class ReductionType:
    kind: str  # "Good" | "Multiplicative" | "Additive"
    p: int
    warning: str | None = None

    @property
    def bad(self) -> bool:
        return self.kind != "Good"

    @property
    def additive(self) -> bool:
        return self.kind == "Additive"

    def __str__(self):
        return self.kind


def reduction_type(curve: Curve, p: int) -> ReductionType:
    if curve.base is not None:
        raise InvalidArgument("reduction types are computed for curves over Q")
    vd = val_p(curve.disc, p)
    vc = val_p(curve.c4, p)
    warn = None
    if not (vd < 12 or vc < 4):
        warn = f"model may not be minimal at {p} (v(disc)={vd}, v(c4)={vc})"
        # at 2 and 3 minimal models often fail the test, so only attach the note there
        if p > 3:
            warnings.warn(warn, stacklevel=2)
    if vd == 0:
        kind = "Good"
    elif vc == 0:
        kind = "Multiplicative"
    else:
        kind = "Additive"
    return ReductionType(kind, p, warn)


def bad_primes(curve: Curve) -> dict[int, ReductionType]:
    return {p: reduction_type(curve, p) for p in sorted(prime_support(curve.disc))}
