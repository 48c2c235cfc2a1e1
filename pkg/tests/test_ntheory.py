import math

import pytest
from hypothesis import given, strategies as st

from grdh.errors import DomainError
from grdh.ntheory import INFINITE, Factorization, divisors, euler_phi, factorize, gcd_many, p_valuation

from oracles import divisors_naive, factor_naive, phi_naive


@pytest.mark.parametrize("n, expected", [
    (9, ((3, 2),)),
    (15, ((3, 1), (5, 1))),
    (360, ((2, 3), (3, 2), (5, 1))),
    (2, ((2, 1),)),
    (997, ((997, 1),)),
])
def test_factorize_examples(n, expected):
    assert factorize(n).factors == expected


def test_factorize_matches_naive_and_multiplies_back():
    for n in range(2, 1001):
        f = factorize(n)
        assert math.prod(p**e for p, e in f) == n
        if n <= 300:
            assert list(f.factors) == factor_naive(n)


def test_factorize_large_semiprime():
    assert factorize(999983 * 1000003).factors == ((999983, 1), (1000003, 1))


@pytest.mark.parametrize("n", [1, 0, -5])
def test_factorize_rejects_small(n):
    with pytest.raises(DomainError):
        factorize(n)


def test_factorization_validates():
    with pytest.raises(DomainError):
        Factorization(12, ((2, 2), (3, 2)))
    with pytest.raises(DomainError):
        Factorization(12, ((3, 1), (2, 2)))


@pytest.mark.parametrize("n, phi", [(1, 1), (9, 6), (15, 8)])
def test_euler_phi_examples(n, phi):
    assert euler_phi(n) == phi


def test_euler_phi_matches_gcd_scan():
    for n in range(1, 501):
        assert euler_phi(n) == phi_naive(n)


def test_euler_phi_multiplicative():
    for m in range(1, 201):
        for n in range(1, 201, 7):
            if math.gcd(m, n) == 1:
                assert euler_phi(m * n) == euler_phi(m) * euler_phi(n)


def test_euler_phi_domain():
    with pytest.raises(DomainError):
        euler_phi(0)


@pytest.mark.parametrize("values, n, g", [([2, 3], 6, 1), ([2, 4], 6, 2), ([], 6, 6)])
def test_gcd_many(values, n, g):
    assert gcd_many(values, n) == g


def test_p_valuation_examples():
    assert p_valuation(3, 18) == 2
    assert p_valuation(3, 0) is INFINITE
    assert p_valuation(2, 7) == 0
    with pytest.raises(DomainError):
        p_valuation(4, 8)


@given(st.sampled_from([2, 3, 5, 7, 11]), st.integers(-10**6, 10**6))
def test_p_valuation_is_exact(p, a):
    r = p_valuation(p, a)
    if a == 0:
        assert r is INFINITE
    else:
        assert a % p**r == 0 and a % p ** (r + 1) != 0


@pytest.mark.parametrize("n, divs", [(1, [1]), (9, [1, 3, 9]), (12, [1, 2, 3, 4, 6, 12])])
def test_divisors_examples(n, divs):
    assert divisors(n) == divs


def test_divisors_match_scan():
    for n in range(1, 400):
        assert divisors(n) == divisors_naive(n)
