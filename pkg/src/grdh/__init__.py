"""Dot-product universal hashing over Z_n with restricted keys.

Exact solution counts for restricted linear congruences, the MMH*/RDH/GRDH
hash families and their collision analysis, and an authentication code with
secrecy built on RDH.
"""

from .authcode import (
    REJECT,
    AuthKey,
    Ciphertext,
    SchemeParams,
    asu_check,
    best_substitution_success,
    decrypt,
    encrypt,
    key_hiding_posterior,
    secrecy_posterior,
)
from .congruence import (
    CongruenceInstance,
    PrimeLocalData,
    UnsolvableCase,
    count_restricted,
    count_unrestricted,
    enumerate_solutions,
    knapsack_solvable,
    prime_local,
    unsolvable_case,
)
from .errors import ConsistencyError, DomainError, EnumerationCapExceeded
from .families import FamilyParams, Flavor, HashKey, Message, enumerate_keys, hash_value, key_space_size, sample_key
from .ntheory import INFINITE, Factorization, divisors, euler_phi, factorize, gcd_many, p_valuation
from .universality import (
    Classification,
    brute_force_prob,
    classify,
    collision_prob,
    delta_prob,
    max_collision_prob,
    max_delta_prob,
)

__version__ = "0.1.0"
