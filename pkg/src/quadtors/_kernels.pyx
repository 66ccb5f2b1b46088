# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled integer kernels; see _kernels_py for the reference versions."""

from libc.stdlib cimport malloc, free


def trial_divide(n, long limit):
    cdef long p = 2, e
    cdef unsigned long long m
    out = []
    # arbitrary-size phase, until the cofactor fits a machine word
    while n >= 2**63 and p < limit and p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p = 3 if p == 2 else p + 2
    if n < 2**63:
        m = n
        while p < limit and <unsigned long long>p * p <= m:
            if m % p == 0:
                e = 0
                while m % p == 0:
                    m //= p
                    e += 1
                out.append((p, e))
            p = 3 if p == 2 else p + 2
        n = m
    if n > 1 and p * p > n:
        out.append((n, 1))
        n = 1
    return out, n


def count_points(a1, a2, a3, a4, a6, long p):
    cdef long b1 = a1 % p, b2 = a2 % p, b3 = a3 % p, b4 = a4 % p, b6 = a6 % p
    cdef long x, y, s, f, n
    cdef signed char *chi
    if p == 2:
        n = 1
        for x in range(2):
            for y in range(2):
                if (y * y + b1 * x * y + b3 * y - x * x * x - b2 * x * x - b4 * x - b6) % 2 == 0:
                    n += 1
        return n
    chi = <signed char *> malloc(p)
    try:
        for x in range(p):
            chi[x] = -1
        chi[0] = 0
        for y in range(1, (p + 1) // 2):
            chi[(y * y) % p] = 1
        n = 1
        for x in range(p):
            s = (b1 * x + b3) % p
            f = ((((x + b2) % p) * x % p + b4) * x % p + b6) % p
            n += 1 + chi[(s * s + 4 * f) % p]
    finally:
        free(chi)
    return n


def roots_mod_p(coeffs, long p):
    cdef long k = len(coeffs), i, x
    cdef long long acc
    cdef long long *cs = <long long *> malloc(k * sizeof(long long))
    roots = []
    try:
        for i in range(k):
            cs[i] = coeffs[k - 1 - i] % p
        for x in range(p):
            acc = 0
            for i in range(k):
                acc = (acc * x + cs[i]) % p
            if acc == 0:
                roots.append(x)
    finally:
        free(cs)
    return roots
