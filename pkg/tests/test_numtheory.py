import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from circ16.errors import FactorizationTimeout, InvalidResidue
from circ16.numtheory import (
    Factorization,
    Mod8Class,
    factorize,
    is_prime,
    mod8_class,
    one_plus_two_squares,
    primes_below,
    two_squares,
)

from conftest import brute_two_squares, trial_factor

PRIMES_1E5 = primes_below(100_000)


def test_is_prime_examples():
    assert is_prime(2)
    assert not is_prime(1)
    assert is_prime(7232 // 64)


def test_is_prime_matches_sieve():
    sieve = set(primes_below(20_000))
    assert all(is_prime(n) == (n in sieve) for n in range(20_000))


@pytest.mark.parametrize("n", [561, 1105, 3215031751, 3825123056546413051, 318665857834031151167461])
def test_is_prime_rejects_strong_pseudoprimes(n):
    assert not is_prime(n)


def test_is_prime_large():
    assert is_prime(2**127 - 1)
    assert not is_prime((2**61 - 1) * (2**89 - 1))


def test_factorize_examples():
    assert factorize(576) == Factorization(1, ((2, 6), (3, 2)))
    assert factorize(-320) == Factorization(-1, ((2, 6), (5, 1)))
    assert factorize(1) == Factorization(1, ())


def test_factorize_round_trip_random():
    rng = random.Random(2024)
    for _ in range(10_000):
        n = rng.randint(-10**12, 10**12) or 1
        fac = factorize(n)
        assert fac.value() == n
        assert all(is_prime(p) for p, _ in fac.factors)
        assert [p for p, _ in fac.factors] == sorted({p for p, _ in fac.factors})


@given(st.integers(2, 10**7))
def test_factorize_agrees_with_trial_division(n):
    assert dict(factorize(n).factors) == trial_factor(n)


def test_factorize_rho_path():
    n = (2**31 - 1) * 1000003 * 1000033
    assert factorize(n, seed=7).primes() == [1000003, 1000033, 2**31 - 1]


def test_factorize_budget():
    with pytest.raises(FactorizationTimeout):
        factorize((2**61 - 1) * (2**89 - 1) * 1000003 * 1000033, budget=10)


def test_two_squares_examples():
    assert (two_squares(5).a, two_squares(5).b) == (1, 2)
    assert brute_two_squares(17) == [(1, 4), (4, 1)]
    assert (two_squares(17).a, two_squares(17).b) == (1, 4)
    assert (two_squares(113).a, two_squares(113).b) == (7, 8)
    with pytest.raises(InvalidResidue):
        two_squares(7)


def test_two_squares_all_primes_below_1e5():
    for p in PRIMES_1E5:
        if p % 4 == 1:
            r = two_squares(p)
            assert r.a * r.a + r.b * r.b == p and r.a % 2 == 1 and r.b % 2 == 0 and r.a > 0 and r.b > 0


def test_one_plus_two_squares_examples():
    assert (one_plus_two_squares(3).a, one_plus_two_squares(3).b) == (1, 1)
    assert (one_plus_two_squares(11).a, one_plus_two_squares(11).b) == (3, 1)
    assert (one_plus_two_squares(19).a, one_plus_two_squares(19).b) == (1, 3)
    with pytest.raises(InvalidResidue):
        one_plus_two_squares(17)


def test_one_plus_two_squares_sweep():
    for p in PRIMES_1E5:
        if p % 8 == 3:
            r = one_plus_two_squares(p)
            assert r.a * r.a + 2 * r.b * r.b == p and r.a % 2 == 1 and r.b % 2 == 1


def test_mod8_class_examples():
    assert mod8_class(17) is Mod8Class.PM3
    assert mod8_class(113) is Mod8Class.PM1
    assert mod8_class(73) is Mod8Class.PM3
    with pytest.raises(InvalidResidue):
        mod8_class(13)


def test_mod8_class_is_well_defined():
    for p in PRIMES_1E5:
        if p % 8 == 1:
            r = two_squares(p)
            plus, minus = (r.a + r.b) % 8, (r.a - r.b) % 8
            assert ({plus, minus} <= {1, 7}) or ({plus, minus} <= {3, 5})
