"""Arithmetic in a quadratic field Q(sqrt d)."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InvalidArgument
from .exact import INF, as_rational, check_squarefree, is_rational_square, squarefree_kernel, val_p


@dataclass(frozen=True)
class QuadField:
    d: int

    def __post_init__(self):
        object.__setattr__(self, "d", check_squarefree(self.d))

    def __call__(self, a, b=0) -> "QuadElem":
        return QuadElem(as_rational(a), as_rational(b), self)

    def sqrt_of(self, n) -> "QuadElem":
        """sqrt(n) for rational n with Q(sqrt n) = self, normalised over d."""
        k, s = squarefree_kernel(n)
        if k == 1:
            return self(s)
        if k != self.d:
            raise InvalidArgument(f"sqrt({n}) does not lie in Q(sqrt {self.d})")
        return self(0, s)

    @property
    def gen(self) -> "QuadElem":
        return self(0, 1)

    def __repr__(self):
        return f"Q(sqrt({self.d}))"


def _coerce(x, field):
    if isinstance(x, QuadElem):
        if x.field != field:
            raise InvalidArgument(f"mixed fields {x.field} and {field}")
        return x
    if isinstance(x, (int, Fraction)):
        return QuadElem(Fraction(x), Fraction(0), field)
    return None


@dataclass(frozen=True)
class QuadElem:
    """a + b*sqrt(d)."""

    a: Fraction
    b: Fraction
    field: QuadField

    @property
    def d(self) -> int:
        return self.field.d

    def is_rational(self) -> bool:
        return self.b == 0

    def conj(self):
        return QuadElem(self.a, -self.b, self.field)

    def norm(self) -> Fraction:
        return self.a * self.a - self.d * self.b * self.b

    def trace(self) -> Fraction:
        return 2 * self.a

    def __add__(self, o):
        o = _coerce(o, self.field)
        if o is None:
            return NotImplemented
        return QuadElem(self.a + o.a, self.b + o.b, self.field)

    __radd__ = __add__

    def __neg__(self):
        return QuadElem(-self.a, -self.b, self.field)

    def __sub__(self, o):
        o = _coerce(o, self.field)
        if o is None:
            return NotImplemented
        return QuadElem(self.a - o.a, self.b - o.b, self.field)

    def __rsub__(self, o):
        o = _coerce(o, self.field)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, o):
        if isinstance(o, (int, Fraction)):
            return QuadElem(self.a * o, self.b * o, self.field)
        o = _coerce(o, self.field)
        if o is None:
            return NotImplemented
        return QuadElem(self.a * o.a + self.d * self.b * o.b, self.a * o.b + self.b * o.a, self.field)

    __rmul__ = __mul__

    def inverse(self):
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in quadratic field")
        return QuadElem(self.a / n, -self.b / n, self.field)

    def __truediv__(self, o):
        if isinstance(o, (int, Fraction)):
            if o == 0:
                raise ZeroDivisionError("division by zero in quadratic field")
            return QuadElem(self.a / o, self.b / o, self.field)
        o = _coerce(o, self.field)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, o):
        o = _coerce(o, self.field)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out, base = self.field(1), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, o):
        if isinstance(o, QuadElem):
            return self.field == o.field and self.a == o.a and self.b == o.b
        if isinstance(o, (int, Fraction)):
            return self.b == 0 and self.a == o
        return NotImplemented

    def __hash__(self):
        return hash(self.a) if self.b == 0 else hash((self.a, self.b, self.field.d))

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __repr__(self):
        return f"QuadElem({self.a}, {self.b}, d={self.d})"

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        r = f"sqrt({self.d})"
        tail = r if self.b == 1 else f"-{r}" if self.b == -1 else f"{self.b}*{r}"
        if self.a == 0:
            return tail
        sign = "-" if self.b < 0 else "+"
        mag = r if abs(self.b) == 1 else f"{abs(self.b)}*{r}"
        return f"{self.a} {sign} {mag}"


def qf_arith(x: QuadElem, y, op: str) -> QuadElem:
    if isinstance(y, QuadElem) and y.field != x.field:
        raise InvalidArgument("operands live in different fields")
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    raise InvalidArgument(f"unknown op {op!r}")


def is_square_in_K(z: QuadElem) -> QuadElem | None:
    """A square root of z in its field, or None."""
    K, d = z.field, z.d
    if z.b == 0:
        s = is_rational_square(z.a)
        if s is not None:
            return K(s)
        s = is_rational_square(z.a / d)
        if s is not None:
            return K(0, s)
        return None
    n = is_rational_square(z.norm())
    if n is None:
        return None
    for half in ((z.a + n) / 2, (z.a - n) / 2):
        u = is_rational_square(half)
        if u:
            return K(u, z.b / (2 * u))
    return None


def sqrt_in(field: QuadField | None, x):
    """Square root of x (rational or QuadElem) in field (None meaning Q), or None."""
    if field is None:
        if isinstance(x, QuadElem):
            raise InvalidArgument("irrational value over Q")
        return is_rational_square(x)
    if not isinstance(x, QuadElem):
        x = field(x)
    return is_square_in_K(x)


def val_ramified_doubled(z, p: int):
    """2 * v(z) for the prime of K above a ramified p, with v(p) = 1."""
    if isinstance(z, QuadElem):
        if z.d % p:
            raise InvalidArgument(f"p = {p} does not ramify via d = {z.d}; only ramified primes are supported")
        if not z:
            return INF
        return val_p(z.norm(), p)
    raise InvalidArgument("val_ramified expects a QuadElem")


def val_ramified(z: QuadElem, p: int):
    """Valuation at the ramified prime above p normalised by v(p) = 1 (a half-integer)."""
    v = val_ramified_doubled(z, p)
    return v if v is INF else Fraction(v, 2)
