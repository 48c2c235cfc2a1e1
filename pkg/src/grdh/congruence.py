"""Restricted linear congruences.

A restricted linear congruence is

    a_1 x_1 + ... + a_k x_k == b (mod n),   gcd(x_i, n) == t_i for every i,

with each t_i a positive divisor of n. This module counts its solutions in
closed form, says why an instance has none, and provides a brute-force
enumerator that is used as an independent oracle for the closed form.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Sequence

from .config import check_cap
from .errors import ConsistencyError, DomainError
from .ntheory import INFINITE, euler_phi, factorize, gcd_many, p_valuation


@dataclass(frozen=True)
class CongruenceInstance:
    """One congruence ``a . x == b (mod n)`` with ``gcd(x_i, n) == t_i``.

    ``a`` and ``b`` are reduced into ``[0, n)`` on construction.
    """

    n: int
    a: tuple[int, ...]
    b: int
    t: tuple[int, ...]

    def __post_init__(self):
        n = self.n
        if n < 2:
            raise DomainError(f"modulus must be >= 2, got {n}")
        a = tuple(int(ai) % n for ai in self.a)
        t = tuple(int(ti) for ti in self.t)
        if not a:
            raise DomainError("need at least one unknown")
        if len(a) != len(t):
            raise DomainError(f"a has length {len(a)} but t has length {len(t)}")
        for ti in t:
            if ti < 1 or n % ti:
                raise DomainError(f"t entry {ti} is not a positive divisor of {n}")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "b", int(self.b) % n)

    @property
    def k(self) -> int:
        return len(self.a)

    def search_space(self) -> int:
        """Number of x vectors meeting the gcd constraints alone."""
        return math.prod(euler_phi(self.n // ti) for ti in self.t)

    def is_homogeneous_zero(self) -> bool:
        return not any(self.a)


@dataclass(frozen=True)
class PrimeLocalData:
    """Per-prime parameters of the counting formula.

    ``m_p`` is the first power level j >= 1 at which some a_i t_i is not
    divisible by p**j, and ``e_p`` is how many indices escape at that level.
    ``m_p`` is INFINITE (and ``e_p`` 0) when every a_i t_i is zero.
    """

    p: int
    r_p: int
    m_p: object
    e_p: int

    @property
    def active(self) -> bool:
        """True when this prime contributes a non-trivial factor (m_p <= r_p)."""
        return self.m_p is not INFINITE and self.m_p <= self.r_p


def prime_local(p: int, r_p: int, a: Sequence[int], t: Sequence[int]) -> PrimeLocalData:
    if len(a) != len(t):
        raise DomainError(f"a has length {len(a)} but t has length {len(t)}")
    if not a:
        raise DomainError("empty coefficient vector")
    vals = [p_valuation(p, ai * ti) for ai, ti in zip(a, t)]
    finite = [v for v in vals if v is not INFINITE]
    if not finite:
        return PrimeLocalData(p, r_p, INFINITE, 0)
    low = min(finite)
    return PrimeLocalData(p, r_p, low + 1, finite.count(low))


def local_data(inst: CongruenceInstance) -> list[PrimeLocalData]:
    return [prime_local(p, r, inst.a, inst.t) for p, r in factorize(inst.n)]


def _divides(p: int, j: int, b: int) -> bool:
    v = p_valuation(p, b)
    return v is INFINITE or v >= j


def _exactly_divides(p: int, j: int, b: int) -> bool:
    v = p_valuation(p, b)
    return v is not INFINITE and v == j


def _obstructed(loc: PrimeLocalData, b: int) -> bool:
    """The two "no solution" preconditions checked before the product formula."""
    if loc.active:
        return not _divides(loc.p, loc.m_p - 1, b)
    return not _divides(loc.p, loc.r_p, b)


def local_factor(loc: PrimeLocalData, b: int) -> Fraction:
    """Factor contributed by one unobstructed prime (1 for inactive primes)."""
    if not loc.active:
        return Fraction(1)
    p, m, e = loc.p, loc.m_p, loc.e_p
    scale = Fraction(p) ** (m - loc.r_p - 1)
    if _divides(p, m, b):
        return scale * (1 - Fraction((-1) ** (e - 1), (p - 1) ** (e - 1)))
    # here p**(m-1) exactly divides b
    return scale * (1 - Fraction((-1) ** e, (p - 1) ** e))


def _evaluate(space: int, locs: list[PrimeLocalData], b: int) -> int:
    total = Fraction(space)
    for loc in locs:
        if _obstructed(loc, b):
            return 0
        total *= local_factor(loc, b)
    if total.denominator != 1 or total < 0:
        raise ConsistencyError(f"non-integral solution count {total} (b={b}, {locs})")
    return total.numerator


def count_restricted(inst: CongruenceInstance) -> int:
    space = inst.search_space()
    if inst.is_homogeneous_zero():
        return space if inst.b == 0 else 0
    return _evaluate(space, local_data(inst), inst.b)


def count_by_target(n: int, a: Sequence[int], t: Sequence[int]) -> list[int]:
    """``count_restricted`` for every target b in [0, n), sharing the per-prime work."""
    inst = CongruenceInstance(n, tuple(a), 0, tuple(t))
    space = inst.search_space()
    if inst.is_homogeneous_zero():
        return [space] + [0] * (n - 1)
    locs = local_data(inst)
    return [_evaluate(space, locs, b) for b in range(n)]


class Case(enum.Enum):
    NONE = "NONE"
    I = "I"  # noqa: E741
    II = "II"
    III = "III"
    IV = "IV"
    V = "V"


@dataclass(frozen=True)
class UnsolvableCase:
    case_id: Case
    witness_prime: int | None = None

    @property
    def solvable(self) -> bool:
        return self.case_id is Case.NONE


def unsolvable_case(inst: CongruenceInstance) -> UnsolvableCase:
    """First reason (primes ascending, cases I..V) why the instance has no solution."""
    if inst.is_homogeneous_zero():
        raise DomainError("all coefficients are zero; no case analysis applies")
    b = inst.b
    for loc in local_data(inst):
        p, m, e = loc.p, loc.m_p, loc.e_p
        if loc.active and not _divides(p, m - 1, b):
            return UnsolvableCase(Case.I, p)
        if not loc.active and not _divides(p, loc.r_p, b):
            return UnsolvableCase(Case.II, p)
        if loc.active and e == 1 and _divides(p, m, b):
            return UnsolvableCase(Case.III, p)
        if p == 2 and loc.active:
            if e % 2 == 1 and _divides(2, m, b):
                return UnsolvableCase(Case.IV, 2)
            if e % 2 == 0 and _exactly_divides(2, m - 1, b):
                return UnsolvableCase(Case.V, 2)
    return UnsolvableCase(Case.NONE)


def count_unrestricted(n: int, a: Sequence[int], b: int) -> int:
    """Solutions of ``a . x == b (mod n)`` over all of Z_n^k (no gcd constraints)."""
    if n < 2 or not a:
        raise DomainError("need n >= 2 and at least one coefficient")
    ell = gcd_many(a, n)
    if b % ell:
        return 0
    return ell * n ** (len(a) - 1)


def knapsack_solvable(n: int, a: Sequence[int], b: int) -> bool:
    """Whether ``a . x == b`` has a solution with every x_i a unit mod n."""
    inst = CongruenceInstance(n, tuple(a), b, (1,) * len(a))
    if inst.is_homogeneous_zero():
        raise DomainError("all coefficients are zero")
    return unsolvable_case(inst).solvable


def _join_last(n, a, b, columns):
    """Brute-force join: scan every prefix, look the last coordinate up by residue."""
    *head, last = columns
    a_head, a_last = a[:-1], a[-1]
    by_residue: dict[int, list[int]] = {}
    for x in last:
        by_residue.setdefault(a_last * x % n, []).append(x)
    out = []
    for prefix in product(*head):
        need = (b - sum(ai * xi for ai, xi in zip(a_head, prefix))) % n
        for x in by_residue.get(need, ()):
            out.append(prefix + (x,))
    return out


def enumerate_solutions(inst: CongruenceInstance, cap: int | None = None) -> list[tuple[int, ...]]:
    """Every solution in lexicographic order, found by direct search.

    Does not use the counting formula; it is the oracle the formula is
    checked against. ``n**k`` must not exceed the enumeration cap.
    """
    n = inst.n
    check_cap(n**inst.k, cap, "solution candidates")
    columns = [[x for x in range(n) if math.gcd(x, n) == ti] for ti in inst.t]
    return _join_last(n, inst.a, inst.b, columns)


def enumerate_unrestricted(n: int, a: Sequence[int], b: int, cap: int | None = None) -> list[tuple[int, ...]]:
    """Every x in Z_n^k with ``a . x == b (mod n)``, lexicographic order."""
    check_cap(n ** len(a), cap, "solution candidates")
    a = tuple(ai % n for ai in a)
    return _join_last(n, a, b % n, [range(n)] * len(a))
