"""Primality, factorization and binary quadratic form representations."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from enum import Enum
from math import gcd, isqrt

from .errors import FactorizationTimeout, InvalidResidue

# Deterministic Miller-Rabin bases for n < 3.3 * 10^24 (covers 2^64).
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_MR_DETERMINISTIC_LIMIT = 3317044064679887385961981
RANDOM_ROUNDS = 40

TRIAL_LIMIT = 10_000
DEFAULT_RHO_BUDGET = 5_000_000


def _small_primes(limit: int) -> list[int]:
    sieve = bytearray([1]) * (limit + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, isqrt(limit) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(sieve[i * i :: i]))
    return [i for i, flag in enumerate(sieve) if flag]


_SMALL_PRIMES = _small_primes(TRIAL_LIMIT)


def _strong_probable_prime(n: int, a: int, d: int, s: int) -> bool:
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def is_prime(n: int, seed: int = 0) -> bool:
    """Miller-Rabin: deterministic below 2^64 (and well beyond), 40 random rounds above."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES[:25]:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    if n < _MR_DETERMINISTIC_LIMIT:
        bases = _MR_BASES
    else:
        rng = random.Random(seed ^ n)
        bases = tuple(rng.randrange(2, n - 1) for _ in range(RANDOM_ROUNDS))
    return all(_strong_probable_prime(n, a, d, s) for a in bases)


@dataclass(frozen=True)
class Factorization:
    sign: int
    factors: tuple[tuple[int, int], ...] = field(default_factory=tuple)

    def value(self) -> int:
        out = self.sign
        for p, e in self.factors:
            out *= p**e
        return out

    def exponent(self, p: int) -> int:
        return dict(self.factors).get(p, 0)

    def primes(self) -> list[int]:
        return [p for p, _ in self.factors]


class _RhoBudget:
    def __init__(self, total: int):
        self.left = total

    def spend(self, n: int) -> None:
        self.left -= n
        if self.left < 0:
            raise FactorizationTimeout("rho iteration budget exhausted")


def _brent_rho(n: int, rng: random.Random, budget: _RhoBudget) -> int:
    """Return a nontrivial factor of the odd composite ``n``."""
    while True:
        y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
        g, r, q = 1, 1, 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                steps = min(m, r - k)
                for _ in range(steps):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                budget.spend(steps)
                g = gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = gcd(abs(x - ys), n)
                budget.spend(1)
        if g != n:
            return g


def _split(n: int, out: dict[int, int], rng: random.Random, budget: _RhoBudget, seed: int) -> None:
    stack = [n]
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m, seed):
            out[m] = out.get(m, 0) + 1
            continue
        r = isqrt(m)
        if r * r == m:
            stack += [r, r]
            continue
        f = _brent_rho(m, rng, budget)
        stack += [f, m // f]


def factorize(n: int, seed: int = 0, budget: int = DEFAULT_RHO_BUDGET) -> Factorization:
    """Complete prime factorization of a nonzero integer.

    Trial division below ``TRIAL_LIMIT``, then Brent's rho with a seeded RNG.
    Raises ``FactorizationTimeout`` once ``budget`` rho iterations are spent.
    """
    if n == 0:
        raise ValueError("cannot factorize 0")
    sign = -1 if n < 0 else 1
    m = abs(n)
    found: dict[int, int] = {}
    for p in _SMALL_PRIMES:
        if p * p > m:
            break
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            found[p] = e
    if m > 1:
        _split(m, found, random.Random(seed), _RhoBudget(budget), seed)
    result = Factorization(sign, tuple(sorted(found.items())))
    if result.value() != n:
        raise AssertionError(f"factorization of {n} does not multiply back")
    return result


# --------------------------------------------------------------------------
# Quadratic forms
# --------------------------------------------------------------------------


def _sqrt_minus(d: int, p: int) -> int:
    """A square root of ``-d`` modulo the odd prime ``p`` (assumed to exist)."""
    target = (-d) % p
    if p % 4 == 3:
        return pow(target, (p + 1) // 4, p)
    # Tonelli-Shanks
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(target, q, p), pow(target, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c, t, r = i, b * b % p, t * b * b % p, r * b % p
    return r


def cornacchia(d: int, p: int) -> tuple[int, int]:
    """Positive ``(x, y)`` with ``x^2 + d y^2 = p`` for prime ``p``."""
    r0 = _sqrt_minus(d, p)
    if r0 * r0 % p != (-d) % p:
        raise InvalidResidue(f"-{d} is not a square modulo {p}")
    if 2 * r0 < p:
        r0 = p - r0
    a, b = p, r0
    limit = isqrt(p)
    while b > limit:
        a, b = b, a % b
    rest = p - b * b
    if rest % d:
        raise InvalidResidue(f"{p} is not of the form x^2 + {d}y^2")
    y = isqrt(rest // d)
    if y * y * d != rest:
        raise InvalidResidue(f"{p} is not of the form x^2 + {d}y^2")
    return b, y


@dataclass(frozen=True)
class TwoSquares:
    a: int  # odd, positive
    b: int  # even, positive


@dataclass(frozen=True)
class OnePlusTwoSquares:
    a: int
    b: int


def two_squares(p: int) -> TwoSquares:
    if p % 4 != 1:
        raise InvalidResidue(f"{p} is not 1 mod 4")
    x, y = cornacchia(1, p)
    if x % 2 == 0:
        x, y = y, x
    return TwoSquares(x, y)


def one_plus_two_squares(p: int) -> OnePlusTwoSquares:
    """``p = a^2 + 2 b^2`` with ``a, b`` odd and positive (needs ``p = 3 mod 8``)."""
    if p % 8 != 3:
        raise InvalidResidue(f"{p} is not 3 mod 8")
    a, b = cornacchia(2, p)
    return OnePlusTwoSquares(a, b)


class Mod8Class(str, Enum):
    PM1 = "PM1"
    PM3 = "PM3"


def mod8_class(p: int) -> Mod8Class:
    """Whether ``a + b`` is ``+-1`` or ``+-3`` mod 8 for ``p = a^2 + b^2``."""
    if p % 8 != 1:
        raise InvalidResidue(f"{p} is not 1 mod 8")
    rep = two_squares(p)
    return Mod8Class.PM3 if (rep.a + rep.b) % 8 in (3, 5) else Mod8Class.PM1


def primes_below(limit: int) -> list[int]:
    return _small_primes(limit - 1) if limit > 2 else []
