"""Membership of an integer in S(16), the set of 16x16 integer circulant determinants.

    S(16) = Z_odd  u  128Z
            u  {64pm : p = 5 (mod 8)}
            u  {64p^2 m : p = 3 (mod 8)}
            u  {64pm : p = a^2 + b^2 = 1 (mod 8), a + b = +-3 (mod 8)}

Everything else of the form ``64 * odd`` is excluded: its odd part factors into
class-PM1 primes, primes 7 mod 8, and squarefree primes 3 mod 8.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from .errors import FactorizationTimeout, IndeterminateFactorization
from .numtheory import DEFAULT_RHO_BUDGET, Mod8Class, factorize, is_prime, mod8_class

MEMBER_REASONS = ("Odd", "DivisibleBy128", "Prime5Mod8", "Prime3Mod8Squared", "Prime1Mod8ClassPM3")
NON_MEMBER_REASONS = ("EvenNotDivisibleBy64", "ExcludedPrimeShape")


@dataclass(frozen=True)
class PrimeFactorClass:
    """One prime of the odd cofactor of a non-member, tagged by its excluded shape."""

    prime: int
    exponent: int
    kind: str  # "PM1" (1 mod 8), "7mod8", or "3mod8" (exponent exactly 1)


@dataclass(frozen=True)
class MembershipVerdict:
    value: int
    member: bool
    reason_kind: str
    reason_prime: int | None = None
    decomposition: tuple[PrimeFactorClass, ...] = field(default_factory=tuple)
    sign: int = 1
    plan: Any = None

    def to_dict(self) -> dict[str, Any]:
        return {
            "value": str(self.value),
            "member": self.member,
            "reason_kind": self.reason_kind,
            "reason_prime": None if self.reason_prime is None else str(self.reason_prime),
            "decomposition": [
                {"prime": str(f.prime), "exponent": str(f.exponent), "kind": f.kind}
                for f in self.decomposition
            ],
        }

    @classmethod
    def from_dict(cls, doc: dict[str, Any]) -> MembershipVerdict:
        value = int(doc["value"])
        return cls(
            value=value,
            member=bool(doc["member"]),
            reason_kind=doc["reason_kind"],
            reason_prime=None if doc.get("reason_prime") is None else int(doc["reason_prime"]),
            decomposition=tuple(
                PrimeFactorClass(int(f["prime"]), int(f["exponent"]), f["kind"])
                for f in doc.get("decomposition", ())
            ),
            sign=-1 if value < 0 else 1,
        )


def classify(v: int, seed: int = 0, budget: int = DEFAULT_RHO_BUDGET) -> MembershipVerdict:
    v = int(v)
    sign = -1 if v < 0 else 1
    if v % 2:
        return MembershipVerdict(v, True, "Odd", sign=sign)
    if v % 128 == 0:
        return MembershipVerdict(v, True, "DivisibleBy128", sign=sign)
    if v % 64:
        return MembershipVerdict(v, False, "EvenNotDivisibleBy64", sign=sign)

    k = abs(v) // 64
    try:
        fac = factorize(k, seed=seed, budget=budget)
    except FactorizationTimeout as exc:
        raise IndeterminateFactorization(f"could not factor {k}: {exc}") from exc

    # cheapest construction first
    five = [p for p, _ in fac.factors if p % 8 == 5]
    if five:
        return MembershipVerdict(v, True, "Prime5Mod8", five[0], sign=sign)
    three_sq = [p for p, e in fac.factors if p % 8 == 3 and e >= 2]
    if three_sq:
        return MembershipVerdict(v, True, "Prime3Mod8Squared", three_sq[0], sign=sign)

    classes = {p: mod8_class(p) for p, _ in fac.factors if p % 8 == 1}
    pm3 = [p for p, cls in classes.items() if cls is Mod8Class.PM3]
    if pm3:
        return MembershipVerdict(v, True, "Prime1Mod8ClassPM3", pm3[0], sign=sign)

    kinds = {1: "PM1", 7: "7mod8", 3: "3mod8"}
    decomposition = tuple(PrimeFactorClass(p, e, kinds[p % 8]) for p, e in fac.factors)
    return MembershipVerdict(v, False, "ExcludedPrimeShape", decomposition=decomposition, sign=sign)


def verify_verdict(verdict: MembershipVerdict) -> bool:
    """Re-check the arithmetic claim carried by a verdict without trusting the classifier."""
    v = verdict.value
    kind = verdict.reason_kind
    p = verdict.reason_prime
    if kind == "Odd":
        return verdict.member and v % 2 == 1
    if kind == "DivisibleBy128":
        return verdict.member and v % 128 == 0
    if kind == "EvenNotDivisibleBy64":
        return not verdict.member and v % 2 == 0 and v % 64 != 0
    in_64_odd = v % 64 == 0 and (v // 64) % 2 == 1
    if kind in MEMBER_REASONS:
        if not (verdict.member and in_64_odd and p is not None and is_prime(p)):
            return False
        k = abs(v) // 64
        if kind == "Prime5Mod8":
            return p % 8 == 5 and k % p == 0
        if kind == "Prime3Mod8Squared":
            return p % 8 == 3 and k % (p * p) == 0
        return p % 8 == 1 and k % p == 0 and mod8_class(p) is Mod8Class.PM3
    if kind == "ExcludedPrimeShape":
        if verdict.member or not in_64_odd:
            return False
        product = 1
        for f in verdict.decomposition:
            if not is_prime(f.prime) or f.exponent < 1:
                return False
            if f.kind == "PM1":
                ok = f.prime % 8 == 1 and mod8_class(f.prime) is Mod8Class.PM1
            elif f.kind == "7mod8":
                ok = f.prime % 8 == 7
            elif f.kind == "3mod8":
                ok = f.prime % 8 == 3 and f.exponent == 1
            else:
                ok = False
            if not ok:
                return False
            product *= f.prime**f.exponent
        primes = [f.prime for f in verdict.decomposition]
        return product == abs(v) // 64 and primes == sorted(set(primes))
    return False
