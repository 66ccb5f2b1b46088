"""Exact rational arithmetic helpers: valuations, factorization, square-free parts."""
from __future__ import annotations

import math
import random
from fractions import Fraction
from functools import lru_cache

from .errors import InvalidArgument
from .kernels import trial_divide

Rational = Fraction

TRIAL_LIMIT = 10**6
_RHO_SEED = 0x5EED


class _Infinity:
    """+infinity for valuations. Compares above every integer, supports no arithmetic."""

    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "INF"

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("quadtors.INF")

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True

    def __reduce__(self):
        return (_Infinity, ())


INF = _Infinity()


def as_rational(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise InvalidArgument(f"not a rational number: {x!r}")


_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53)


def is_prime(n: int) -> bool:
    """Miller-Rabin with fixed bases; deterministic below 3.3e24."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def val_p(x, p: int):
    """p-adic valuation of a rational; INF for zero."""
    if not isinstance(p, int) or not is_prime(p):
        raise InvalidArgument(f"{p!r} is not a prime")
    x = as_rational(x)
    if x == 0:
        return INF
    return _vint(x.numerator, p) - _vint(x.denominator, p)


def _vint(n: int, p: int) -> int:
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def _brent(n: int, rng: random.Random) -> int:
    # Pollard rho, Brent's cycle detection with batched gcds
    if n % 2 == 0:
        return 2
    while True:
        y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
        g = r = q = 1
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g


def _split(n: int, out: dict, rng: random.Random):
    if n == 1:
        return
    if is_prime(n):
        out[n] = out.get(n, 0) + 1
        return
    r = math.isqrt(n)
    if r * r == n:
        _split(r, out, rng)
        _split(r, out, rng)
        return
    f = _brent(n, rng)
    _split(f, out, rng)
    _split(n // f, out, rng)


@lru_cache(maxsize=4096)
def _factor_abs(n: int) -> tuple:
    small, rest = trial_divide(n, TRIAL_LIMIT)
    out = dict(small)
    if rest > 1:
        _split(rest, out, random.Random(_RHO_SEED))
    return tuple(sorted(out.items()))


def factorize(n: int) -> list[tuple[int, int]]:
    """Prime factorization of |n| as a sorted list of (prime, exponent)."""
    if not isinstance(n, int) or isinstance(n, bool):
        raise InvalidArgument(f"factorize needs an integer, got {n!r}")
    if n == 0:
        raise InvalidArgument("cannot factor 0")
    return list(_factor_abs(abs(n)))


def prime_support(n) -> set[int]:
    x = as_rational(n)
    ps = {p for p, _ in factorize(x.numerator)} if x.numerator else set()
    if x.denominator > 1:
        ps |= {p for p, _ in factorize(x.denominator)}
    return ps


def squarefree_kernel(x) -> tuple[int, Fraction]:
    """Write x = k * s^2 with k a square-free integer (or 1) and s > 0 rational."""
    x = as_rational(x)
    if x == 0:
        raise InvalidArgument("squarefree_kernel of 0")
    m = x.numerator * x.denominator
    k = -1 if m < 0 else 1
    for p, e in factorize(m):
        if e % 2:
            k *= p
    s = math.isqrt(m // k)
    return k, Fraction(s, x.denominator)


def is_squarefree(n: int) -> bool:
    return n != 0 and all(e == 1 for _, e in factorize(n))


def check_squarefree(d) -> int:
    """Validate d as the parameter of a quadratic field: square-free, not 0 or 1."""
    if isinstance(d, Fraction):
        if d.denominator != 1:
            raise InvalidArgument(f"d must be an integer, got {d}")
        d = d.numerator
    if not isinstance(d, int) or isinstance(d, bool):
        raise InvalidArgument(f"d must be an integer, got {d!r}")
    if d in (0, 1):
        raise InvalidArgument(f"d = {d} does not define a quadratic field")
    if not is_squarefree(d):
        raise InvalidArgument(f"d = {d} is not square-free")
    return d


def is_rational_square(q) -> Fraction | None:
    """Nonnegative rational square root of q, or None."""
    q = as_rational(q)
    if q < 0:
        return None
    a, b = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if a * a == q.numerator and b * b == q.denominator:
        return Fraction(a, b)
    return None


def squarefree_range(bound: int) -> list[int]:
    """All square-free d with 0 < |d| <= bound and d != 1, ordered by |d| then sign."""
    out = []
    for n in range(1, bound + 1):
        if is_squarefree(n):
            if n != 1:
                out.append(n)
            out.append(-n)
    return sorted(out, key=lambda d: (abs(d), d))
