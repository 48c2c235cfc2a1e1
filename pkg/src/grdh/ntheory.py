"""Integer number theory primitives.

Everything here works on Python ints, so there is no overflow anywhere.
Factorization is plain trial division, which is plenty for moduli up to
around 10**9.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import lru_cache, reduce
from typing import Iterable

from .errors import DomainError


class _Infinity(enum.Enum):
    INFINITE = "INFINITE"

    def __repr__(self) -> str:
        return "INFINITE"


#: Valuation of zero (and first-level index when nothing escapes divisibility).
INFINITE = _Infinity.INFINITE


@dataclass(frozen=True)
class Factorization:
    value: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        prod = 1
        last = 1
        for p, e in self.factors:
            if p <= last or e < 1:
                raise DomainError(f"malformed factor list {self.factors!r}")
            last = p
            prod *= p**e
        if prod != self.value:
            raise DomainError(f"factors {self.factors!r} do not multiply to {self.value}")

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    def exponent(self, p: int) -> int:
        for q, e in self.factors:
            if q == p:
                return e
        return 0

    def __iter__(self):
        return iter(self.factors)

    def __len__(self) -> int:
        return len(self.factors)


@lru_cache(maxsize=4096)
def factorize(n: int) -> Factorization:
    if n < 2:
        raise DomainError(f"factorize needs n >= 2, got {n}")
    factors = []
    m = n
    for p in _trial_divisors():
        if p * p > m:
            break
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            factors.append((p, e))
    if m > 1:
        factors.append((m, 1))
    return Factorization(n, tuple(factors))


def _trial_divisors():
    yield 2
    yield 3
    d = 5
    while True:
        yield d
        yield d + 2
        d += 6


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    f = factorize(n)
    return f.factors == ((n, 1),)


def smallest_prime_factor(n: int) -> int:
    return factorize(n).factors[0][0]


def euler_phi(n: int) -> int:
    if n < 1:
        raise DomainError(f"euler_phi needs n >= 1, got {n}")
    if n == 1:
        return 1
    result = n
    for p, _ in factorize(n):
        result = result // p * (p - 1)
    return result


def gcd_many(values: Iterable[int], n: int) -> int:
    """gcd of every entry of ``values`` together with ``n`` (just ``n`` for no values)."""
    return reduce(math.gcd, values, n)


def p_valuation(p: int, a: int) -> int | _Infinity:
    """Exponent of the highest power of ``p`` dividing ``a``; INFINITE for ``a == 0``."""
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    if a == 0:
        return INFINITE
    a = abs(a)
    r = 0
    while a % p == 0:
        a //= p
        r += 1
    return r


def divisors(n: int) -> list[int]:
    if n < 1:
        raise DomainError(f"divisors needs n >= 1, got {n}")
    if n == 1:
        return [1]
    divs = [1]
    for p, e in factorize(n):
        divs = [d * p**j for d in divs for j in range(e + 1)]
    return sorted(divs)


def units(n: int) -> list[int]:
    """Residues in [0, n) coprime to n, ascending (``[0]`` for n == 1)."""
    if n == 1:
        return [0]
    return [u for u in range(1, n) if math.gcd(u, n) == 1]
