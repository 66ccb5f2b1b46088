"""Pure-Python versions of the hot integer kernels.

These mirror ``_kernels.pyx`` exactly and are used when the compiled module
is unavailable (or when QUADTORS_PURE=1).
"""


def trial_divide(n, limit):
    """Strip prime factors below ``limit`` from n > 0.

    Returns (factors, cofactor) with factors a list of (p, e); the cofactor
    has no prime factor below ``limit`` (and is 1 when fully factored).
    """
    out = []
    p = 2
    while p < limit and p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p = 3 if p == 2 else p + 2
    if n > 1 and p * p > n:
        out.append((n, 1))
        n = 1
    return out, n


def count_points(a1, a2, a3, a4, a6, p):
    """Number of points (with infinity) on the reduction mod p; good p assumed."""
    a1 %= p; a2 %= p; a3 %= p; a4 %= p; a6 %= p
    if p == 2:
        n = 1
        for x in range(2):
            for y in range(2):
                if (y * y + a1 * x * y + a3 * y - x * x * x - a2 * x * x - a4 * x - a6) % 2 == 0:
                    n += 1
        return n
    chi = [-1] * p
    chi[0] = 0
    for y in range(1, (p + 1) // 2):
        chi[y * y % p] = 1
    n = 1
    for x in range(p):
        s = (a1 * x + a3) % p
        f = (((x + a2) * x + a4) * x + a6) % p
        n += 1 + chi[(s * s + 4 * f) % p]
    return n


def roots_mod_p(coeffs, p):
    """All x in [0, p) with sum(coeffs[i] x^i) = 0 mod p."""
    cs = [c % p for c in reversed(coeffs)]
    roots = []
    for x in range(p):
        acc = 0
        for c in cs:
            acc = (acc * x + c) % p
        if acc == 0:
            roots.append(x)
    return roots
