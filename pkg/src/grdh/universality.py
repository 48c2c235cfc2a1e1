"""Exact collision and difference probabilities for the dot-product families.

For distinct messages m, m' with difference a = m - m', the event
``h_x(m) - h_x(m') == b`` is the restricted congruence ``a . x == b (mod n)``
over the family's keys, so its probability is a solution count divided by
the key-space size. All probabilities are ``fractions.Fraction`` values.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import NamedTuple, Sequence

from .config import check_cap
from .congruence import CongruenceInstance, count_by_target, count_restricted
from .errors import ConsistencyError, DomainError, EnumerationCapExceeded
from .families import FamilyParams, Flavor, enumerate_keys, key_space_size
from .ntheory import smallest_prime_factor

ExactProb = Fraction


def _difference(params: FamilyParams, a: Sequence[int]) -> tuple[int, ...]:
    a = tuple(int(ai) % params.n for ai in a)
    if len(a) != params.k:
        raise DomainError(f"difference vector has length {len(a)}, expected {params.k}")
    if not any(a):
        raise DomainError("difference vector must be nonzero")
    return a


def delta_prob(params: FamilyParams, a: Sequence[int], b: int) -> Fraction:
    """Pr over keys that ``a . x == b (mod n)``, from the closed-form count."""
    a = _difference(params, a)
    hits = sum(count_restricted(CongruenceInstance(params.n, a, b, t)) for t in params.t_components())
    return Fraction(hits, key_space_size(params))


def collision_prob(params: FamilyParams, a: Sequence[int]) -> Fraction:
    return delta_prob(params, a, 0)


def delta_profile(params: FamilyParams, a: Sequence[int]) -> list[Fraction]:
    """``delta_prob(a, b)`` for every b in [0, n)."""
    a = _difference(params, a)
    hits = [0] * params.n
    for t in params.t_components():
        for b, c in enumerate(count_by_target(params.n, a, t)):
            hits[b] += c
    size = key_space_size(params)
    return [Fraction(h, size) for h in hits]


def brute_force_prob(params: FamilyParams, a: Sequence[int], b: int, cap: int | None = None) -> Fraction:
    """Same quantity as ``delta_prob`` but by scanning every key; no closed form involved."""
    n = params.n
    a = tuple(int(ai) % n for ai in a)
    b %= n
    keys = enumerate_keys(params, cap)
    hits = sum(1 for key in keys if sum(ai * xi for ai, xi in zip(a, key.x)) % n == b)
    return Fraction(hits, len(keys))


class MaxResult(NamedTuple):
    prob: Fraction
    a: tuple[int, ...]
    b: int


def _nonzero_vectors(n: int, k: int):
    it = product(range(n), repeat=k)
    next(it)  # the zero vector comes first
    return it


def _odd_unit_family(params: FamilyParams) -> bool:
    return params.unit_keys and params.n % 2 == 1


def max_delta_prob(params: FamilyParams, mode: str = "auto", cap: int | None = None) -> MaxResult:
    """Largest ``delta_prob`` over a != 0 and all b.

    ``exhaustive`` scans every (a, b) and keeps the lexicographically smallest
    maximizer. ``analytic`` is only available for odd n with unit keys and
    returns 1/(p-1) for the least prime p | n, witnessed by a = (n/p, 0, ...)
    and b = n/p. ``auto`` picks analytic when it applies.
    """
    n, k = params.n, params.k
    if mode == "auto":
        mode = "analytic" if _odd_unit_family(params) else "exhaustive"
    if mode == "analytic":
        if not _odd_unit_family(params):
            raise DomainError("analytic maximum needs odd n and unit keys")
        p = smallest_prime_factor(n)
        return MaxResult(Fraction(1, p - 1), (n // p,) + (0,) * (k - 1), n // p)
    if mode != "exhaustive":
        raise DomainError(f"unknown mode {mode!r}")
    check_cap(n**k * n, cap, "difference/target pairs")
    best = None
    for a in _nonzero_vectors(n, k):
        for b, prob in enumerate(delta_profile(params, a)):
            if best is None or prob > best.prob:
                best = MaxResult(prob, a, b)
    return best


def max_collision_prob(params: FamilyParams, mode: str = "auto", cap: int | None = None) -> MaxResult:
    """Largest ``collision_prob`` over a != 0; the result's ``b`` is always 0."""
    n, k = params.n, params.k
    if mode == "auto":
        mode = "analytic" if _odd_unit_family(params) else "exhaustive"
    if mode == "analytic":
        if not _odd_unit_family(params):
            raise DomainError("analytic maximum needs odd n and unit keys")
        if k == 1:
            return MaxResult(Fraction(0), (1,), 0)
        p = smallest_prime_factor(n)
        return MaxResult(Fraction(1, p - 1), (n // p, n // p) + (0,) * (k - 2), 0)
    if mode != "exhaustive":
        raise DomainError(f"unknown mode {mode!r}")
    check_cap(n**k, cap, "difference vectors")
    best = None
    for a in _nonzero_vectors(n, k):
        prob = collision_prob(params, a)
        if best is None or prob > best.prob:
            best = MaxResult(prob, a, 0)
    return best


class AUStatus(enum.Enum):
    EPS_AU = "EPS_AU"
    NOT_AU = "NOT_AU"
    ZERO_COLLISION = "ZERO_COLLISION"


class ADUStatus(enum.Enum):
    EPS_ADU = "EPS_ADU"
    NOT_ADU = "NOT_ADU"


@dataclass(frozen=True)
class Classification:
    """Verdicts on almost-universality and almost-Delta-universality.

    ``au_witness`` is a difference vector attaining the worst collision
    probability (None for ZERO_COLLISION); ``adu_witness`` is an (a, b) pair
    attaining the worst difference probability. ``*_witness_prob`` is the
    exact probability the witness attains.
    """

    au_status: AUStatus
    au_epsilon: Fraction | None
    au_witness: tuple[int, ...] | None
    au_witness_prob: Fraction | None
    adu_status: ADUStatus
    adu_epsilon: Fraction | None
    adu_witness: tuple[tuple[int, ...], int]
    adu_witness_prob: Fraction


def classify(params: FamilyParams, verify: bool = False, cap: int | None = None) -> Classification:
    """Closed-form classification; ``verify`` re-checks witnesses by brute force.

    With ``verify`` the witnesses are recomputed over all keys and, when the
    (a, b) search fits under the cap, the epsilon values are compared with
    an exhaustive maximum.
    """
    n, k, t = params.n, params.k, params.t
    zeros = (0,) * k

    if params.flavor is Flavor.MMH_STAR:
        eps = Fraction(1, n)
        a = (1,) + zeros[1:]
        result = Classification(
            AUStatus.EPS_AU, eps, a, eps, ADUStatus.EPS_ADU, eps, (a, 0), eps
        )
    else:
        big = next((i for i, ti in enumerate(t) if ti != 1), None)
        if big is not None:
            # a single coordinate a_i = n/t_i kills every key: a_i * x_i == 0 always
            a = zeros[:big] + (n // t[big],) + zeros[big + 1:]
            au = (AUStatus.NOT_AU, None, a, Fraction(1))
            adu = (ADUStatus.NOT_ADU, None, (a, 0), Fraction(1))
        elif n % 2 == 0:
            h = n // 2
            if k == 1:
                au = (AUStatus.ZERO_COLLISION, Fraction(0), None, None)
            else:
                au = (AUStatus.NOT_AU, None, (h, h) + zeros[2:], Fraction(1))
            adu = (ADUStatus.NOT_ADU, None, ((h,) + zeros[1:], h), Fraction(1))
        else:
            p = smallest_prime_factor(n)
            eps = Fraction(1, p - 1)
            q = n // p
            if k == 1:
                au = (AUStatus.ZERO_COLLISION, Fraction(0), None, None)
            else:
                au = (AUStatus.EPS_AU, eps, (q, q) + zeros[2:], eps)
            adu = (ADUStatus.EPS_ADU, eps, ((q,) + zeros[1:], q), eps)
        result = Classification(*au, *adu)

    if verify:
        _verify(params, result, cap)
    return result


def _verify(params: FamilyParams, c: Classification, cap: int | None) -> None:
    def expect(label, got, want):
        if got != want:
            raise ConsistencyError(f"{label}: expected {want}, oracle gave {got} for {params}")

    a, b = c.adu_witness
    expect("difference witness", brute_force_prob(params, a, b, cap), c.adu_witness_prob)
    if c.au_witness is not None:
        expect("collision witness", brute_force_prob(params, c.au_witness, 0, cap), c.au_witness_prob)

    n, k = params.n, params.k
    try:
        check_cap(n**k * n * max(key_space_size(params), 1), cap)
    except EnumerationCapExceeded:
        return
    worst = max_delta_prob(params, mode="exhaustive", cap=cap)
    expect("difference maximum", worst.prob, c.adu_witness_prob)
    if c.au_status is AUStatus.ZERO_COLLISION:
        for a in _nonzero_vectors(n, k):
            expect("zero collision", brute_force_prob(params, a, 0, cap), Fraction(0))
    else:
        expect("collision maximum", max_collision_prob(params, mode="exhaustive", cap=cap).prob,
               c.au_witness_prob)
