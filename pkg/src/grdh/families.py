"""Dot-product hash families MMH*, RDH and GRDH.

Every family hashes a message m in Z_n^k to ``m . x mod n``; they differ only
in which keys x are allowed:

* GRDH: gcd(x_i, n) == t_i for a fixed vector of divisors t.
* RDH: GRDH with every t_i == 1, i.e. x in (Z_n^*)^k.
* MMH*: n prime and x ranges over all of Z_n^k.

MMH* is the disjoint union of the GRDH families over t in {1, p}^k, which is
how its exact probabilities reuse the GRDH machinery.
"""

from __future__ import annotations

import enum
import math
import random
from dataclasses import dataclass
from itertools import product
from typing import Sequence

from .config import check_cap
from .errors import DomainError
from .ntheory import euler_phi, is_prime, units


class Flavor(enum.Enum):
    MMH_STAR = "MMH_STAR"
    RDH = "RDH"
    GRDH = "GRDH"


@dataclass(frozen=True)
class FamilyParams:
    n: int
    k: int
    t: tuple[int, ...]
    flavor: Flavor = Flavor.GRDH

    def __post_init__(self):
        if self.n < 2:
            raise DomainError(f"modulus must be >= 2, got {self.n}")
        if self.k < 1:
            raise DomainError(f"word count must be >= 1, got {self.k}")
        t = tuple(int(ti) for ti in self.t)
        if len(t) != self.k:
            raise DomainError(f"t has length {len(t)}, expected {self.k}")
        for ti in t:
            if ti < 1 or self.n % ti:
                raise DomainError(f"t entry {ti} is not a positive divisor of {self.n}")
        object.__setattr__(self, "t", t)
        flavor = Flavor(self.flavor)
        object.__setattr__(self, "flavor", flavor)
        if flavor is not Flavor.GRDH and any(ti != 1 for ti in t):
            raise DomainError(f"{flavor.value} requires t = (1, ..., 1)")
        if flavor is Flavor.MMH_STAR and not is_prime(self.n):
            raise DomainError(f"MMH* needs a prime modulus, got {self.n}")

    @classmethod
    def grdh(cls, n: int, t: Sequence[int]) -> "FamilyParams":
        return cls(n, len(t), tuple(t), Flavor.GRDH)

    @classmethod
    def rdh(cls, n: int, k: int) -> "FamilyParams":
        return cls(n, k, (1,) * k, Flavor.RDH)

    @classmethod
    def mmh_star(cls, p: int, k: int) -> "FamilyParams":
        return cls(p, k, (1,) * k, Flavor.MMH_STAR)

    @property
    def unit_keys(self) -> bool:
        """True when keys are restricted to units (t all ones, not MMH*)."""
        return self.flavor is not Flavor.MMH_STAR and all(ti == 1 for ti in self.t)

    def t_components(self) -> list[tuple[int, ...]]:
        """The GRDH constraint vectors whose key sets partition this family's keys."""
        if self.flavor is Flavor.MMH_STAR:
            return list(product((1, self.n), repeat=self.k))
        return [self.t]

    def key_valid(self, x: Sequence[int]) -> bool:
        if len(x) != self.k or any(not 0 <= xi < self.n for xi in x):
            return False
        if self.flavor is Flavor.MMH_STAR:
            return True
        return all(math.gcd(xi, self.n) == ti for xi, ti in zip(x, self.t))


@dataclass(frozen=True)
class HashKey:
    x: tuple[int, ...]


@dataclass(frozen=True)
class Message:
    m: tuple[int, ...]

    @classmethod
    def of(cls, m: Sequence[int], n: int) -> "Message":
        return cls(tuple(int(mi) % n for mi in m))


def _as_tuple(v) -> tuple[int, ...]:
    if isinstance(v, HashKey):
        return v.x
    if isinstance(v, Message):
        return v.m
    return tuple(v)


def hash_value(params: FamilyParams, key, msg) -> int:
    """``m . x mod n`` after checking the key belongs to the family."""
    x = _as_tuple(key)
    if not params.key_valid(x):
        raise DomainError(f"key {x} is not valid for {params}")
    m = _as_tuple(msg)
    if len(m) != params.k:
        raise DomainError(f"message has length {len(m)}, expected {params.k}")
    return sum(mi * xi for mi, xi in zip(m, x)) % params.n


def key_space_size(params: FamilyParams) -> int:
    if params.flavor is Flavor.MMH_STAR:
        return params.n**params.k
    return math.prod(euler_phi(params.n // ti) for ti in params.t)


def _coordinate_choices(params: FamilyParams) -> list[list[int]]:
    # x_i = t_i * u with u a unit of Z_{n/t_i}; this hits each valid x_i once
    n = params.n
    if params.flavor is Flavor.MMH_STAR:
        return [list(range(n))] * params.k
    return [sorted(ti * u for u in units(n // ti)) for ti in params.t]


def sample_key(params: FamilyParams, rng: random.Random | None = None) -> HashKey:
    """Uniformly random key; pass a seeded ``random.Random`` for reproducibility."""
    rng = rng if rng is not None else random.Random()
    n = params.n
    if params.flavor is Flavor.MMH_STAR:
        return HashKey(tuple(rng.randrange(n) for _ in range(params.k)))
    x = []
    for ti in params.t:
        x.append(ti * rng.choice(units(n // ti)) % n)
    return HashKey(tuple(x))


def enumerate_keys(params: FamilyParams, cap: int | None = None) -> list[HashKey]:
    check_cap(key_space_size(params), cap, "keys")
    return [HashKey(x) for x in product(*_coordinate_choices(params))]
