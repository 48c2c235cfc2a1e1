"""Authentication code with secrecy built from a one-time pad and RDH.

Keys are pairs x||y with x in Z_n^k (pad) and y in (Z_n^*)^k (MAC key).
A message m is sent as c||tag with c = m + x (mod n) and tag = m . y (mod n);
decryption strips the pad and rejects unless the tag recomputes.

The analysis functions compute exact probabilities by enumerating messages
and keys, under the uniform source distribution the scheme is designed for.
"""

from __future__ import annotations

import enum
import random
from collections import Counter, defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Callable, Hashable, Mapping, NamedTuple, Sequence

from .config import check_cap
from .errors import DomainError
from .families import Message
from .ntheory import euler_phi, smallest_prime_factor, units


@dataclass(frozen=True)
class SchemeParams:
    n: int
    k: int

    def __post_init__(self):
        if self.n < 3 or self.n % 2 == 0:
            raise DomainError(f"the scheme needs an odd modulus >= 3, got {self.n}")
        if self.k < 1:
            raise DomainError(f"k must be >= 1, got {self.k}")

    @property
    def p_min(self) -> int:
        return smallest_prime_factor(self.n)

    def secrecy_bound(self) -> Fraction:
        return Fraction(1, (self.p_min - 1) * self.n ** (self.k - 1))

    def substitution_bound(self) -> Fraction:
        return Fraction(1, self.p_min - 1)

    def key_count(self) -> int:
        return self.n**self.k * euler_phi(self.n) ** self.k


@dataclass(frozen=True)
class AuthKey:
    x: tuple[int, ...]
    y: tuple[int, ...]

    def check(self, params: SchemeParams) -> None:
        n, k = params.n, params.k
        if len(self.x) != k or len(self.y) != k:
            raise DomainError(f"key halves must have length {k}")
        if any(not 0 <= v < n for v in self.x + self.y):
            raise DomainError(f"key entries must lie in [0, {n})")
        units_n = set(units(n))
        if any(v not in units_n for v in self.y):
            raise DomainError(f"MAC key {self.y} has an entry not coprime to {n}")


@dataclass(frozen=True)
class Ciphertext:
    c: tuple[int, ...]
    tag: int


class _Reject(enum.Enum):
    REJECT = "REJECT"

    def __repr__(self) -> str:
        return "REJECT"

    __str__ = __repr__


#: Returned by ``decrypt`` when the tag does not verify.
REJECT = _Reject.REJECT


def _vec(m) -> tuple[int, ...]:
    return m.m if isinstance(m, Message) else tuple(m)


def _tag(y, m, n) -> int:
    return sum(yi * mi for yi, mi in zip(y, m)) % n


def encrypt(params: SchemeParams, key: AuthKey, m) -> Ciphertext:
    key.check(params)
    n = params.n
    m = tuple(v % n for v in _vec(m))
    if len(m) != params.k:
        raise DomainError(f"message has length {len(m)}, expected {params.k}")
    return Ciphertext(tuple((mi + xi) % n for mi, xi in zip(m, key.x)), _tag(key.y, m, n))


def decrypt(params: SchemeParams, key: AuthKey, ct: Ciphertext):
    """The plaintext tuple, or REJECT when the tag does not verify."""
    key.check(params)
    n = params.n
    m = tuple((ci - xi) % n for ci, xi in zip(ct.c, key.x))
    if _tag(key.y, m, n) != ct.tag % n:
        return REJECT
    return m


def sample_key(params: SchemeParams, rng: random.Random | None = None) -> AuthKey:
    rng = rng if rng is not None else random.Random()
    n, k = params.n, params.k
    u = units(n)
    return AuthKey(tuple(rng.randrange(n) for _ in range(k)), tuple(rng.choice(u) for _ in range(k)))


def all_messages(params: SchemeParams) -> list[tuple[int, ...]]:
    return list(product(range(params.n), repeat=params.k))


def all_keys(params: SchemeParams, cap: int | None = None) -> list[AuthKey]:
    check_cap(params.key_count(), cap, "scheme keys")
    n, k = params.n, params.k
    pads = list(product(range(n), repeat=k))
    macs = list(product(units(n), repeat=k))
    return [AuthKey(x, y) for x in pads for y in macs]


def all_ciphertexts(params: SchemeParams) -> list[Ciphertext]:
    n = params.n
    return [Ciphertext(c, t) for c in product(range(n), repeat=params.k) for t in range(n)]


@lru_cache(maxsize=32)
def _joint(params: SchemeParams, cap: int | None) -> dict[Ciphertext, Counter]:
    """For each ciphertext, how many (message, key) pairs produce it, by (m, y)."""
    n = params.n
    msgs = all_messages(params)
    check_cap(len(msgs) * params.key_count(), cap, "message/key pairs")
    table: dict[Ciphertext, Counter] = defaultdict(Counter)
    for key in all_keys(params, cap):
        for m in msgs:
            ct = Ciphertext(tuple((mi + xi) % n for mi, xi in zip(m, key.x)), _tag(key.y, m, n))
            table[ct][(m, key.y)] += 1
    return dict(table)


def is_reachable(params: SchemeParams, ct: Ciphertext, cap: int | None = None) -> bool:
    return ct in _joint(params, cap)


def secrecy_posterior(params: SchemeParams, m, ct: Ciphertext, cap: int | None = None) -> Fraction:
    """Pr[m' = m | E(m') = ct] for uniform m' and uniform keys; 0 if ct is unreachable."""
    m = tuple(_vec(m))
    cell = _joint(params, cap).get(ct)
    if not cell:
        return Fraction(0)
    hit = sum(c for (mm, _), c in cell.items() if mm == m)
    return Fraction(hit, sum(cell.values()))


def key_hiding_posterior(params: SchemeParams, y: Sequence[int], ct: Ciphertext, cap: int | None = None) -> Fraction:
    """Pr[y' = y | E_{x||y'}(m) = ct] for uniform x, m, y'; 0 if ct is unreachable."""
    y = tuple(y)
    cell = _joint(params, cap).get(ct)
    if not cell:
        return Fraction(0)
    hit = sum(c for (_, yy), c in cell.items() if yy == y)
    return Fraction(hit, sum(cell.values()))


class SubstitutionResult(NamedTuple):
    prob: Fraction
    forger: dict[Ciphertext, Ciphertext]


def _ct_order(ct: Ciphertext):
    return (ct.c, ct.tag)


def best_substitution_success(params: SchemeParams, cap: int | None = None) -> SubstitutionResult:
    """Success probability of the best substitution forger, and that forger.

    For each observed ciphertext the forger answers with the other ciphertext
    most likely to verify given what it saw; no forger can do better. Ties
    go to the smallest (c, tag).
    """
    n = params.n
    msgs = all_messages(params)
    check_cap(len(msgs) ** 2 * params.key_count(), cap, "substitution events")
    weight: dict[Ciphertext, Counter] = defaultdict(Counter)
    total = 0
    for key in all_keys(params, cap):
        images = [
            Ciphertext(tuple((mi + xi) % n for mi, xi in zip(m, key.x)), _tag(key.y, m, n))
            for m in msgs
        ]
        total += len(images)
        for i, ct in enumerate(images):
            row = weight[ct]
            for j, other in enumerate(images):
                if i != j:
                    row[other] += 1
    forger = {}
    wins = 0
    for ct in sorted(weight, key=_ct_order):
        row = weight[ct]
        best = max(row.values())
        forger[ct] = min((o for o, w in row.items() if w == best), key=_ct_order)
        wins += best
    return SubstitutionResult(Fraction(wins, total), forger)


def substitution_success(
    params: SchemeParams,
    forger: Mapping[Ciphertext, Ciphertext] | Callable[[Ciphertext], Ciphertext],
    cap: int | None = None,
) -> Fraction:
    """Pr[F(c) != c and F(c) decrypts] for a given forger, uniform message and key."""
    f = forger.get if isinstance(forger, Mapping) else forger
    msgs = all_messages(params)
    check_cap(len(msgs) * params.key_count(), cap, "message/key pairs")
    wins = total = 0
    for key in all_keys(params, cap):
        for m in msgs:
            ct = encrypt(params, key, m)
            total += 1
            forged = f(ct)
            if forged is not None and forged != ct and decrypt(params, key, forged) is not REJECT:
                wins += 1
    return Fraction(wins, total)


# Generic authentication codes: a finite family of tag functions, one per key.

class ASUResult(NamedTuple):
    ok: bool
    max_prob: Fraction
    witness: tuple  # (m1, t1, m2, t2)


def max_pairwise(family: Sequence[Mapping[Hashable, Hashable]], cap: int | None = None):
    """Largest Pr_k[M_k(m1) = t1 and M_k(m2) = t2] over m1 != m2, with its witness."""
    if not family:
        raise DomainError("empty family")
    domain = list(family[0])
    check_cap(len(domain) ** 2 * len(family), cap, "pairwise events")
    best, witness = Fraction(-1), None
    for m1 in domain:
        for m2 in domain:
            if m1 == m2:
                continue
            counts = Counter((mk[m1], mk[m2]) for mk in family)
            (t1, t2), c = max(counts.items(), key=lambda kv: kv[1])
            if Fraction(c, len(family)) > best:
                best, witness = Fraction(c, len(family)), (m1, t1, m2, t2)
    return best, witness


def asu_check(family: Sequence[Mapping[Hashable, Hashable]], epsilon: Fraction, cap: int | None = None) -> ASUResult:
    """Whether every pairwise probability is at most ``epsilon``.

    ``family`` lists the tag function of each key as a mapping from source
    state to tag; keys are uniform.
    """
    best, witness = max_pairwise(family, cap)
    return ASUResult(best <= epsilon, best, witness)


def mac_substitution_success(
    family: Sequence[Mapping[Hashable, Hashable]],
    forger: Callable[[Hashable, Hashable], tuple[Hashable, Hashable]],
    source: Mapping[Hashable, Fraction],
) -> Fraction:
    """Pr[F1(m, t) != m and M_k(F1) == F2] for a (state, tag) forger and source distribution."""
    total = Fraction(0)
    for mk in family:
        for m, pm in source.items():
            if not pm:
                continue
            m2, t2 = forger(m, mk[m])
            if m2 != m and mk.get(m2) == t2:
                total += pm
    return total / len(family)


def forger_from_witness(witness: tuple) -> Callable:
    """Forger that swaps the observed pair (m1, t1) for (m2, t2) and otherwise gives up."""
    m1, t1, m2, t2 = witness

    def forge(m, t):
        if (m, t) == (m1, t1):
            return m2, t2
        return m, t

    return forge


def rdh_tag_family(n: int, k: int) -> list[dict[tuple[int, ...], int]]:
    """The MAC half of the scheme as an explicit family: one tag table per y."""
    msgs = list(product(range(n), repeat=k))
    return [{m: _tag(y, m, n) for m in msgs} for y in product(units(n), repeat=k)]
