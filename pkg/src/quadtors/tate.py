"""Tate normal forms y^2 + (1-c)xy - by = x^3 - bx^2 and the route that reaches them.

A point P of order at least 4 is moved to the origin in three steps: the
model y^2 = x^3 + b2 x^2 + 8 b4 x + 16 b6, a translation killing the x and
constant terms, and a scaling that equalises the y and x^2 coefficients.
Every intermediate quantity is kept in a PipelineTrace so the discriminant
relations between the models can be re-checked exactly.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import lru_cache

from .curve import O, Curve, Point, VarChange, e2_change, quadratic_twist, transform
from .errors import InternalError, InvalidCurve, InvalidArgument, InvalidParameter, PreconditionViolation, UnsupportedOrder
from .exact import as_rational


@lru_cache(maxsize=1024)
def _tate_curve(b, c) -> Curve:
    return Curve(1 - c, -b, -b, 0, 0)


@dataclass(frozen=True)
class TateForm:
    b: Fraction
    c: Fraction

    def __post_init__(self):
        object.__setattr__(self, "b", as_rational(self.b))
        object.__setattr__(self, "c", as_rational(self.c))
        try:
            self.curve()
        except InvalidCurve:
            raise InvalidParameter(f"singular Tate form b={self.b}, c={self.c}") from None

    @property
    def disc(self) -> Fraction:
        return self.curve().disc

    def curve(self) -> Curve:
        return _tate_curve(self.b, self.c)

    def __str__(self):
        return f"T(b={self.b}, c={self.c})"


@dataclass(frozen=True)
class PipelineTrace:
    x1: Fraction
    y1: Fraction
    s: Fraction
    abar1: Fraction
    abar2: Fraction
    abar3: Fraction
    disc1: Fraction
    disc2: Fraction
    disc_bc: Fraction
    b2: Fraction
    b4: Fraction
    b: Fraction
    c: Fraction
    d: int = 1
    change: VarChange | None = field(default=None, compare=False)

    def to_dict(self) -> dict:
        out = {k: str(getattr(self, k)) for k in
               ("x1", "y1", "s", "abar1", "abar2", "abar3", "disc1", "disc2", "disc_bc", "b2", "b4", "b", "c")}
        out["d"] = self.d
        return out


def _pipeline(model: Curve, P, disc1, d: int, pre: VarChange | None):
    """Run the translation and scaling steps on a model y^2 = x^3 + a2 x^2 + a4 x + a6."""
    if P is O:
        raise UnsupportedOrder("the identity has no Tate normal form")
    x1, y1 = Point.of(*P)
    if not model.is_on(Point(x1, y1)):
        raise PreconditionViolation(f"{P} is not on {model}")
    if y1 == 0:
        raise UnsupportedOrder("point of order 2")
    b2 = model.a2 / d
    b4 = model.a4 / (8 * d * d)
    s = (8 * d * d * b4 + 2 * d * b2 * x1 + 3 * x1 * x1) / (2 * y1)
    abar1, abar2, abar3 = 2 * s, -s * s + 3 * x1 + d * b2, 2 * y1
    if abar2 == 0:
        raise UnsupportedOrder("point of order 3")
    if abar3 == 0:
        raise PreconditionViolation("abar3 vanishes")
    b = -abar2 ** 3 / abar3 ** 2
    c = 1 - abar1 * abar2 / abar3
    tf = TateForm(b, c)
    step = VarChange(1, x1, s, y1).then(VarChange(abar3 / abar2))
    change = pre.then(step) if pre is not None else step
    trace = PipelineTrace(x1, y1, s, abar1, abar2, abar3, disc1, model.disc, tf.disc,
                          b2, b4, b, c, d, change)
    return tf, trace


def to_tate_normal_form(curve: Curve, P, check: bool = True):
    """Tate normal form sending the rational point P to (0,0), with its trace."""
    if curve.base is not None:
        raise InvalidArgument("Tate normal forms are computed over Q")
    P = Point.of(*P) if P is not O else O
    if P is not O and not curve.is_on(P):
        raise PreconditionViolation(f"{P} is not on {curve}")
    ch = e2_change(curve)
    model = transform(curve, ch)
    Q = ch.map_point(P) if P is not O else O
    tf, trace = _pipeline(model, Q, curve.disc, 1, ch)
    if check:
        if transform(curve, trace.change).ainvs != tf.curve().ainvs:
            raise InternalError("Tate form does not match the composed change of variables")
        if trace.change.map_point(P) != (0, 0):
            raise InternalError("point not sent to the origin")
    return tf, trace


def to_tate_normal_form_twisted(curve: Curve, d: int, P, check: bool = True):
    """Tate normal form of the twist y^2 = x^3 + d b2 x^2 + 8 d^2 b4 x + 16 d^3 b6 based at its point P.

    The recorded disc1 is the discriminant of the original curve, so the
    identities carry the d^6 factor.
    """
    model = quadratic_twist(curve, d)
    tf, trace = _pipeline(model, P, curve.disc, d, None)
    if check and transform(model, trace.change).ainvs != tf.curve().ainvs:
        raise InternalError("Tate form does not match the composed change of variables")
    return tf, trace


def tate_curve_for_order(order: int, t) -> TateForm:
    """Tate form on which (0,0) has order 8 or 9, from the standard one-parameter families."""
    t = as_rational(t)
    if order == 8:
        if t in (0, 1, Fraction(1, 2)):
            raise InvalidParameter(f"t = {t} is degenerate for order 8")
        b = (2 * t - 1) * (t - 1)
        return TateForm(b, b / t)
    if order == 9:
        if t in (0, 1):
            raise InvalidParameter(f"t = {t} is degenerate for order 9")
        c = (t - 1) * t * t
        return TateForm(c * (t * t - t + 1), c)
    raise InvalidArgument("only orders 8 and 9 are parametrised")


def closed_form_discriminant(order: int, t) -> Fraction:
    t = as_rational(t)
    if order == 8:
        return (1 - 2 * t) ** 4 * (t - 1) ** 8 * (8 * (t - 1) * t + 1) / t ** 4
    if order == 9:
        return (t - 1) ** 9 * t ** 9 * (t * t - t + 1) ** 3 * (t ** 3 - 6 * t * t + 3 * t + 1)
    raise InvalidArgument("only orders 8 and 9 are parametrised")


@dataclass
class IdentityReport:
    results: dict

    @property
    def ok(self) -> bool:
        return all(self.results.values())

    def failures(self) -> list[str]:
        return [k for k, v in self.results.items() if not v]

    def __str__(self):
        return "\n".join(f"{k}: {'pass' if v else 'FAIL'}" for k, v in self.results.items())


def verify_discriminant_identities(trace: PipelineTrace, context=None) -> IdentityReport:
    """Evaluate the discriminant relations of a trace exactly.

    context may carry a FourTorsionModel (attribute A, B) together with the
    discriminant of the curve it came from, as a pair (model, disc).
    """
    t = trace
    d6 = Fraction(t.d) ** 6
    r = {
        "s_formula": t.s * 2 * t.y1 == 8 * t.d ** 2 * t.b4 + 2 * t.d * t.b2 * t.x1 + 3 * t.x1 ** 2,
        "abar1": t.abar1 == 2 * t.s,
        "abar2": t.abar2 == -t.s ** 2 + 3 * t.x1 + t.d * t.b2,
        "abar3": t.abar3 == 2 * t.y1,
        "model_disc": t.disc2 == 2 ** 12 * d6 * t.disc1,
        "b_c": t.b == -t.abar2 ** 3 / t.abar3 ** 2 and t.c == 1 - t.abar1 * t.abar2 / t.abar3,
    }
    if t.abar3 != 0:
        r["tate_disc_relation"] = t.disc_bc == 2 ** 12 * (t.abar2 / t.abar3) ** 12 * d6 * t.disc1
    else:
        r["tate_disc_relation"] = False
    r["tate_disc_cleared"] = t.disc_bc * t.abar3 ** 4 == 2 ** 12 * t.b ** 4 * d6 * t.disc1
    if context is not None:
        model, disc = context
        r["four_torsion_model"] = 2 ** 12 * disc == 16 * (model.A ** 2 * model.B ** 2 - 4 * model.B ** 3)
    return IdentityReport(r)


def corrupt(trace: PipelineTrace, **changes) -> PipelineTrace:
    """A copy of trace with fields overwritten; used for negative controls."""
    return replace(trace, **changes)
