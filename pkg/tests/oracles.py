"""Independent brute-force oracles used by the tests.

Nothing here imports the package; each function is the dumbest correct way
to compute its quantity.
"""

import math
from fractions import Fraction
from itertools import product


def is_prime_naive(n):
    return n >= 2 and all(n % d for d in range(2, n))


def factor_naive(n):
    out = []
    for p in range(2, n + 1):
        if n % p == 0 and is_prime_naive(p):
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
    return out


def phi_naive(n):
    return sum(1 for x in range(1, n + 1) if math.gcd(x, n) == 1)


def divisors_naive(n):
    return [d for d in range(1, n + 1) if n % d == 0]


def solutions_naive(n, a, b, t=None):
    """Full scan of Z_n^k, optionally filtered by gcd(x_i, n) == t_i."""
    k = len(a)
    out = []
    for x in product(range(n), repeat=k):
        if t is not None and any(math.gcd(xi, n) != ti for xi, ti in zip(x, t)):
            continue
        if sum(ai * xi for ai, xi in zip(a, x)) % n == b % n:
            out.append(x)
    return out


def keys_naive(n, t):
    return [x for x in product(range(n), repeat=len(t)) if all(math.gcd(xi, n) == ti for xi, ti in zip(x, t))]


def prob_naive(n, t, a, b):
    keys = keys_naive(n, t)
    hits = sum(1 for x in keys if sum(ai * xi for ai, xi in zip(a, x)) % n == b % n)
    return Fraction(hits, len(keys))
