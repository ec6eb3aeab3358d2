"""Executable forms of the norm identities and congruences.

Each check takes a coefficient vector's ``NormFactorization`` and returns
``True``/``False``, or ``None`` when the check's hypothesis does not apply
to that vector.  ``run_suite`` tallies them over a batch of vectors.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .circulant import (
    NormFactorization,
    alpha1_exact,
    alpha2_exact,
    det_bareiss,
    in_odd_multiple,
    norms,
    parity_gate,
)
from .numtheory import primes_below

MIN_HIT_RATE = 0.10
PRIMES_3MOD4 = [p for p in primes_below(1000) if p % 4 == 3]


def _sign(x: int) -> int:
    return -1 if x % 2 else 1


def _b_hypothesis(b: Sequence[int]) -> bool:
    return (b[0] - b[2]) % 2 == 1 and (b[1] - b[3]) % 2 == 1


def _c_hypothesis(c: Sequence[int]) -> bool:
    return (c[0] - c[2]) % 2 == 1 and (c[1] - c[3]) % 2 == 1


def _e_hypothesis(e: Sequence[int]) -> bool:
    return (e[0] + e[4] - e[2] - e[6]) % 2 == 1 and (e[1] + e[5] - e[3] - e[7]) % 2 == 1


def _pm1_mod8(x: int) -> bool:
    return x % 8 in (1, 7)


def factorization_identity(nf: NormFactorization, vec: Sequence[int]) -> bool:
    return (
        det_bareiss(vec) == nf.product
        and nf.n1 == nf.alpha1.norm()
        and nf.n2 == nf.alpha2.norm()
    )


def ring_products_match(nf: NormFactorization, vec: Sequence[int]) -> bool:
    return alpha1_exact(vec) == nf.alpha1 and alpha2_exact(vec).norm() == nf.n2


def norm_parities_agree(nf: NormFactorization) -> bool:
    return len({x % 2 for x in nf.as_tuple()}) == 1


def parity_conditions_equivalent(nf: NormFactorization) -> bool:
    t = nf.transforms
    return _b_hypothesis(t.b) == _c_hypothesis(t.c) == _e_hypothesis(t.e)


def order4_part_shape(nf: NormFactorization) -> bool:
    """``N4 N8 N16`` is odd or divisible by 16."""
    x = nf.n4 * nf.n8 * nf.n16
    return x % 2 == 1 or x % 16 == 0


def n2_n4_twice_odd_together(nf: NormFactorization) -> bool:
    return in_odd_multiple(nf.n2, 2) == in_odd_multiple(nf.n4, 2)


def det_64odd_splits(nf: NormFactorization, vec: Sequence[int]) -> bool | None:
    report = parity_gate(vec)
    if not report.det_in_64_odd:
        return None
    return report.conditions_agree


def det_64odd_equivalence(nf: NormFactorization, vec: Sequence[int]) -> bool:
    return parity_gate(vec).conditions_agree


def n4_congruence_from_b(nf: NormFactorization) -> bool | None:
    b = nf.transforms.b
    if not _b_hypothesis(b):
        return None
    rhs = nf.n8 * nf.n16 - 4 * (b[0] * b[2] + b[1] * b[3]) + 2
    return (nf.n4 - rhs) % 16 == 0


def alpha2_congruence(nf: NormFactorization) -> bool | None:
    c = nf.transforms.c
    if not _c_hypothesis(c):
        return None
    cross = 2 * (c[0] * c[2] + c[1] * c[3])
    return (
        (nf.alpha2.re - _sign(c[2]) - cross) % 8 == 0
        and (nf.alpha2.im - _sign(c[1]) - cross) % 8 == 0
    )


def e_cross_congruence(nf: NormFactorization) -> bool | None:
    t = nf.transforms
    e, b, c = t.e, t.b, t.c
    if not _e_hypothesis(e):
        return None
    lhs = 2 * (e[0] * e[4] + e[2] * e[6] + e[1] * e[5] + e[3] * e[7])
    rhs = b[0] * b[2] + b[1] * b[3] + c[0] * c[2] + c[1] * c[3]
    return (lhs - rhs) % 4 == 0


def alpha1_congruence(nf: NormFactorization) -> bool | None:
    t = nf.transforms
    b, c = t.b, t.c
    if not _e_hypothesis(t.e):
        return None
    cross = 2 * (b[0] * b[2] + b[1] * b[3] + c[0] * c[2] + c[1] * c[3])
    return (
        (nf.alpha1.re - _sign(b[2]) - cross) % 8 == 0
        and (nf.alpha1.im - _sign(b[1]) - cross) % 8 == 0
    )


def n4_congruence_from_alphas(nf: NormFactorization) -> bool | None:
    parts = (nf.alpha1.re, nf.alpha1.im, nf.alpha2.re, nf.alpha2.im)
    if not all(_pm1_mod8(x) for x in parts):
        return None
    return (nf.n4 - nf.n8 * nf.n16 - 2) % 16 == 0


def primes_3mod4_even_multiplicity(nf: NormFactorization) -> bool:
    for n in (nf.n1, nf.n2, nf.n4):
        if n == 0:
            continue
        for p in PRIMES_3MOD4:
            if p > n:
                break
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            if e % 2:
                return False
    return True


@dataclass(frozen=True)
class Property:
    name: str
    check: Callable[..., bool | None]
    needs_vector: bool = False
    has_hypothesis: bool = False


PROPERTIES: tuple[Property, ...] = (
    Property("factorization-identity", factorization_identity, needs_vector=True),
    Property("norm-parities-agree", norm_parities_agree),
    Property("parity-conditions-equivalent", parity_conditions_equivalent),
    Property("order4-part-odd-or-16Z", order4_part_shape),
    Property("n2-n4-twice-odd-together", n2_n4_twice_odd_together),
    Property("det-64odd-three-way-equivalence", det_64odd_equivalence, needs_vector=True),
    Property("primes-3mod4-even-multiplicity", primes_3mod4_even_multiplicity),
    Property("n4-congruence-from-b", n4_congruence_from_b, has_hypothesis=True),
    Property("alpha2-congruence-mod8", alpha2_congruence, has_hypothesis=True),
    Property("e-cross-congruence-mod4", e_cross_congruence, has_hypothesis=True),
    Property("alpha1-congruence-mod8", alpha1_congruence, has_hypothesis=True),
    Property("n4-congruence-from-alphas", n4_congruence_from_alphas, has_hypothesis=True),
)

CROSS_ORACLE = Property("ring-products-match", ring_products_match, needs_vector=True)


@dataclass
class PropertyTally:
    name: str
    checked: int = 0
    applicable: int = 0
    violations: list[tuple[int, ...]] = field(default_factory=list)
    has_hypothesis: bool = False

    @property
    def hit_rate(self) -> float:
        return self.applicable / self.checked if self.checked else 0.0

    def passed(self, min_hit_rate: float = MIN_HIT_RATE) -> bool:
        if self.violations:
            return False
        return not self.has_hypothesis or self.hit_rate >= min_hit_rate


def random_vectors(count: int, seed: int, lo: int = -50, hi: int = 50) -> list[tuple[int, ...]]:
    rng = random.Random(seed)
    return [tuple(rng.randint(lo, hi) for _ in range(16)) for _ in range(count)]


def run_suite(
    vectors: Iterable[Sequence[int]],
    properties: Sequence[Property] = PROPERTIES,
) -> dict[str, PropertyTally]:
    tallies = {p.name: PropertyTally(p.name, has_hypothesis=p.has_hypothesis) for p in properties}
    for vec in vectors:
        vec = tuple(vec)
        nf = norms(vec)
        for prop in properties:
            outcome = prop.check(nf, vec) if prop.needs_vector else prop.check(nf)
            tally = tallies[prop.name]
            tally.checked += 1
            if outcome is None:
                continue
            tally.applicable += 1
            if not outcome:
                tally.violations.append(vec)
    return tallies


def small_integer_identities(bound: int = 8) -> list[tuple[str, tuple[int, int, int, int]]]:
    """Exhaustively check three residue identities on ``[-bound, bound]^4``; return failures."""
    failures = []
    rng = range(-bound, bound + 1)
    for a, b, c, d in itertools.product(rng, repeat=4):
        if (a + b - c - d) % 2 and (a * b + c * d - a * c - b * d) % 2:
            failures.append(("swap-parity", (a, b, c, d)))
        if (4 * a * b * (a * a + b * b)) % 8:
            failures.append(("4ab(a^2+b^2)", (a, b, c, d)))
        lhs = a**4 + b**4 + 2 * a * a * b * b + 4 * a * b
        rhs = 1 if (a + b) % 2 else 0  # (1 - (-1)^(a+b)) / 2
        if (lhs - rhs) % 8:
            failures.append(("quartic", (a, b, c, d)))
    return failures
