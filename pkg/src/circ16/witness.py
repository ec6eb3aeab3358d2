"""Explicit coefficient vectors realizing members of S(16).

Every constructor checks the determinant of what it returns with
``det_bareiss``; a construction is a certificate, not a trusted code path.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from math import isqrt
from typing import Any, Sequence

import numpy as np

from .circulant import ORDER, cyclic_convolve, det_bareiss
from .errors import (
    InternalInvariantViolation,
    InvalidResidue,
    NotClassPM3,
    NotMember,
    NotOdd,
    SearchExhausted,
)
from .numtheory import Mod8Class, mod8_class, one_plus_two_squares, two_squares

log = logging.getLogger(__name__)

Vector = tuple[int, ...]

# Found by ``find_value(128, SearchBox(16, -2, 2))``; the first hit in enumeration order.
BASE128_VECTOR: Vector = (1, 1, 1, 1, 1, 1, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0)

# Largest cube radius scanned exhaustively before switching to a gcd in Z[zeta_8].
QUAD_SEARCH_MAX_RADIUS = 16


def _verified(vec: Sequence[int], expected: int, what: str) -> Vector:
    vec = tuple(vec)
    got = det_bareiss(vec)
    if got != expected:
        raise InternalInvariantViolation(f"{what}: determinant {got}, expected {expected}")
    return vec


# --------------------------------------------------------------------------
# Parametric families
# --------------------------------------------------------------------------


def odd_witness(m: int) -> Vector:
    """``1 + x + ... + x^(r-1) + c * (1 + x + ... + x^15)`` with ``m = r + 16c``.

    The all-ones part vanishes at every nontrivial 16th root of unity and the
    truncated geometric sum has unit norm there, so the determinant is ``f(1) = m``.
    """
    if m % 2 == 0:
        raise NotOdd(f"{m} is even")
    r = m % 16
    c = (m - r) // 16
    return _verified([(1 if j < r else 0) + c for j in range(ORDER)], m, "odd_witness")


def mult256_witness(k: int) -> Vector:
    """``(x - 1) - k * (1 + x + ... + x^15)``, determinant ``256 k``."""
    c = -k
    vec = [c] * ORDER
    vec[0] = c - 1
    vec[1] = c + 1
    return _verified(vec, 256 * k, "mult256_witness")


def base128_witness() -> Vector:
    return _verified(BASE128_VECTOR, 128, "base128_witness")


def sum_of_squares_family_vector(k: int, l: int) -> Vector:
    return (k, l, -k, -l, k, l, -k - 1, -l, k, l, -k - 1, -l, k, l, -k - 1, -l - 1)


def sum_of_squares_family_value(k: int, l: int) -> int:
    return 32 * ((8 * k + 3) ** 2 + (8 * l + 1) ** 2)


def sum_of_squares_family(k: int, l: int) -> Vector:
    """Determinant ``32((8k + 3)^2 + (8l + 1)^2)``."""
    return _verified(sum_of_squares_family_vector(k, l), sum_of_squares_family_value(k, l), "sum_of_squares_family")


def squared_form_family_vector(k: int, l: int) -> Vector:
    return (
        k + l, k - l, 1 - l, 1 - l, 1 - k - l, l - k, l, l,
        k + l, k - l, -l, -l, 1 - k - l, l - k, l, l,
    )


def squared_form_family_value(k: int, l: int) -> int:
    return 64 * ((4 * k - 1) ** 2 + 2 * (4 * l - 1) ** 2) ** 2


def squared_form_family(k: int, l: int) -> Vector:
    """Determinant ``64((4k - 1)^2 + 2(4l - 1)^2)^2``."""
    return _verified(squared_form_family_vector(k, l), squared_form_family_value(k, l), "squared_form_family")


def quadruple_family_vector(k: int, l: int, m: int, n: int) -> Vector:
    lh = l // 2  # l/2 for even l, (l-1)/2 for odd l
    sign = -1 if l % 2 else 1
    return (
        k, lh, m, n, -k, -lh, 1 - m, -n,
        k, lh, m, n, 1 - k, sign - lh, 1 - m, -n,
    )


def quadruple_family_value(k: int, l: int, m: int, n: int) -> int:
    first = (4 * k - 1) ** 2 - (4 * m - 2) ** 2 + 2 * (2 * l - 1) * 4 * n
    second = (2 * l - 1) ** 2 - (4 * n) ** 2 - 2 * (4 * k - 1) * (4 * m - 2)
    return 32 * first**2 + 32 * second**2


def quadruple_family(k: int, l: int, m: int, n: int) -> Vector:
    return _verified(quadruple_family_vector(k, l, m, n), quadruple_family_value(k, l, m, n), "quadruple_family")


# --------------------------------------------------------------------------
# Plans
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class WitnessPlan:
    """A tree of constructions; ``realize`` turns it into a vector."""

    kind: str
    params: tuple[int, ...]
    claimed_value: int
    children: tuple[WitnessPlan, ...] = field(default_factory=tuple)

    def to_dict(self) -> dict[str, Any]:
        doc: dict[str, Any] = {
            "kind": self.kind,
            "params": [str(x) for x in self.params],
            "claimed_value": str(self.claimed_value),
        }
        if self.children:
            doc["children"] = [c.to_dict() for c in self.children]
        return doc

    @classmethod
    def from_dict(cls, doc: dict[str, Any]) -> WitnessPlan:
        return cls(
            kind=doc["kind"],
            params=tuple(int(x) for x in doc["params"]),
            claimed_value=int(doc["claimed_value"]),
            children=tuple(cls.from_dict(c) for c in doc.get("children", ())),
        )


_LEAF_BUILDERS = {
    "OddFamily": lambda r, c: odd_witness(r + 16 * c),
    "Mult256Family": lambda c: mult256_witness(-c),
    "Base128Constant": base128_witness,
    "SumOfSquaresFamily": sum_of_squares_family,
    "SquaredFormFamily": squared_form_family,
    "QuadrupleFamily": quadruple_family,
}


def realize(plan: WitnessPlan) -> Vector:
    if plan.kind == "Convolve":
        left, right = plan.children
        if left.claimed_value * right.claimed_value != plan.claimed_value:
            raise InternalInvariantViolation("Convolve claim is not the product of its children")
        vec = cyclic_convolve(realize(left), realize(right))
    else:
        try:
            builder = _LEAF_BUILDERS[plan.kind]
        except KeyError:
            raise ValueError(f"unknown plan node {plan.kind!r}") from None
        vec = builder(*plan.params)
    return _verified(vec, plan.claimed_value, plan.kind)


def odd_plan(m: int) -> WitnessPlan:
    if m % 2 == 0:
        raise NotOdd(f"{m} is even")
    r = m % 16
    return WitnessPlan("OddFamily", (r, (m - r) // 16), m)


def convolve_plan(left: WitnessPlan, right: WitnessPlan) -> WitnessPlan:
    if right.kind == "OddFamily" and right.claimed_value == 1:
        return left
    return WitnessPlan("Convolve", (), left.claimed_value * right.claimed_value, (left, right))


# --------------------------------------------------------------------------
# Prime constructions
# --------------------------------------------------------------------------


def plan_64p_5mod8(p: int) -> WitnessPlan:
    if p % 8 != 5:
        raise InvalidResidue(f"{p} is not 5 mod 8")
    rep = two_squares(p)
    a, b = rep.a, rep.b
    if b % 4 != 2:
        raise InternalInvariantViolation(f"{p} = {a}^2 + {b}^2 with {b} not 2 mod 4")
    if a % 4 == 3:
        a = -a
    r, s = (b - 2) // 4, (a - 1) // 4
    if (r - s) % 2:
        r = -r - 1
    k, l = (r + s) // 2, (r - s) // 2
    return WitnessPlan("SumOfSquaresFamily", (k, l), 64 * p)


def witness_64p_5mod8(p: int) -> WitnessPlan:
    plan = plan_64p_5mod8(p)
    realize(plan)
    return plan


def plan_64p2_3mod8(p: int) -> WitnessPlan:
    rep = one_plus_two_squares(p)
    a, b = rep.a, rep.b
    if a % 4 != 3:
        a = -a
    if b % 4 != 3:
        b = -b
    return WitnessPlan("SquaredFormFamily", ((a + 1) // 4, (b + 1) // 4), 64 * p * p)


def witness_64p2_3mod8(p: int) -> WitnessPlan:
    plan = plan_64p2_3mod8(p)
    realize(plan)
    return plan


def quad_norm(q: Sequence[int]) -> int:
    """Norm of ``r + s z + t z^2 + u z^3`` for a primitive 8th root ``z``."""
    r, s, t, u = q
    return (r * r - t * t + 2 * s * u) ** 2 + (s * s - u * u - 2 * r * t) ** 2


def find_quadruples(p: int, radius: int) -> list[tuple[int, int, int, int]]:
    """All ``(r, s, t, u)`` in ``[-radius, radius]^4`` of norm ``p`` with ``r + t`` and
    ``s + u`` of different parity, ordered by max-coordinate then lexicographically."""
    axis = np.arange(-radius, radius + 1, dtype=np.int64)
    r, s, t, u = np.meshgrid(axis, axis, axis, axis, indexing="ij")
    first = r * r - t * t + 2 * s * u
    second = s * s - u * u - 2 * r * t
    hit = (first * first + second * second == p) & ((r + t - s - u) % 2 == 1)
    quads = np.stack([r[hit], s[hit], t[hit], u[hit]], axis=1)
    if len(quads) == 0:
        return []
    shell = np.abs(quads).max(axis=1)
    # meshgrid 'ij' order is already lexicographic; stable sort on shell keeps it
    quads = quads[np.argsort(shell, kind="stable")]
    return [tuple(int(x) for x in q) for q in quads]  # type: ignore[misc]


def rotate_odd_first(q: Sequence[int]) -> tuple[int, int, int, int]:
    """Multiply by a unit so that ``r`` is the coordinate of odd-one-out parity."""
    r, s, t, u = q
    if r % 2 != s % 2 and s % 2 == t % 2 == u % 2:
        return (r, s, t, u)
    if s % 2 != t % 2 and t % 2 == u % 2 == r % 2:
        return (s, t, u, -r)
    if t % 2 != u % 2 and u % 2 == r % 2 == s % 2:
        return (t, u, -r, -s)
    if u % 2 != r % 2 and r % 2 == s % 2 == t % 2:
        return (u, r, -s, t)
    raise InternalInvariantViolation(f"quadruple {tuple(q)} has no odd-one-out coordinate")


def normalize_quadruple(q: Sequence[int]) -> tuple[int, int, int, int]:
    r, s, t, u = rotate_odd_first(q)
    if ((t + s) % 4, (t + u) % 4) != (2, 0):
        r, s, t, u = -r, u, t, s
    return (r, s, t, u)


def quadruple_c(q: Sequence[int]) -> tuple[int, int, int, int]:
    """Coefficients of ``(1 + z) h(z)`` reduced modulo ``z^4 + 1``."""
    r, s, t, u = q
    return (r - u, r + s, t + s, t + u)


def c_is_admissible(c: Sequence[int]) -> bool:
    return c[0] % 2 == 1 and c[1] % 2 == 1 and c[2] % 4 == 2 and c[3] % 4 == 0


def quadruple_family_params(c: Sequence[int]) -> tuple[int, int, int, int]:
    c0, c1, c2, c3 = c
    if c0 % 4 == 1:
        k, m = (1 - c0) // 4, (2 - c2) // 4
    else:
        k, m = (c0 + 1) // 4, (c2 + 2) // 4
    return (k, (c1 + 1) // 2, m, c3 // 4)


# Z[zeta_8] as Z[x]/(x^4 + 1); fallback for primes too large to scan.


def _z8_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = [0, 0, 0, 0]
    for i in range(4):
        for j in range(4):
            if i + j < 4:
                out[i + j] += a[i] * b[j]
            else:
                out[i + j - 4] -= a[i] * b[j]
    return out


def _z8_sigma(a: Sequence[int], k: int) -> list[int]:
    out = [0, 0, 0, 0]
    for i, ai in enumerate(a):
        e = (i * k) % 8
        if e < 4:
            out[e] += ai
        else:
            out[e - 4] -= ai
    return out


def _z8_divmod_round(a: Sequence[int], b: Sequence[int]) -> list[int]:
    cofactor = _z8_mul(_z8_mul(_z8_sigma(b, 3), _z8_sigma(b, 5)), _z8_sigma(b, 7))
    nb = _z8_mul(b, cofactor)[0]
    num = _z8_mul(a, cofactor)
    quot = [(2 * x + nb) // (2 * nb) for x in num]
    prod = _z8_mul(b, quot)
    return [x - y for x, y in zip(a, prod)]


def _z8_norm(a: Sequence[int]) -> int:
    return quad_norm(a)


def _quadruple_by_gcd(p: int) -> tuple[int, int, int, int]:
    z = 2
    while True:
        rho = pow(z, (p - 1) // 8, p)
        if pow(rho, 4, p) == p - 1:
            break
        z += 1
    a: list[int] = [p, 0, 0, 0]
    b: list[int] = [-rho, 1, 0, 0]
    while any(b):
        a, b = b, _z8_divmod_round(a, b)
    if _z8_norm(a) != p:
        raise SearchExhausted(f"gcd in Z[zeta_8] did not produce an element of norm {p}")
    return tuple(a)  # type: ignore[return-value]


def search_quadruple(p: int) -> tuple[int, int, int, int]:
    """First quadruple of norm ``p`` in (max-coordinate, lexicographic) order."""
    bound = isqrt(p - 1) + 1  # ceil(sqrt(p))
    radius = min(4, bound)
    while True:
        if radius > QUAD_SEARCH_MAX_RADIUS:
            log.info("quadruple search for %d beyond radius %d; using gcd in Z[zeta_8]",
                     p, QUAD_SEARCH_MAX_RADIUS)
            return _quadruple_by_gcd(p)
        hits = find_quadruples(p, radius)
        if hits:
            return hits[0]
        if radius >= bound:
            log.warning("no quadruple of norm %d within radius %d; doubling the bound", p, bound)
            bound *= 2
        radius = min(2 * radius, bound)


def plan_64p_1mod8(p: int) -> WitnessPlan:
    if p % 8 != 1:
        raise InvalidResidue(f"{p} is not 1 mod 8")
    if mod8_class(p) is not Mod8Class.PM3:
        raise NotClassPM3(f"{p} is of class PM1; 64*{p} is not a circulant determinant")
    q = normalize_quadruple(search_quadruple(p))
    c = quadruple_c(q)
    if not c_is_admissible(c):
        raise InternalInvariantViolation(f"normalized quadruple {q} gives inadmissible c = {c}")
    return WitnessPlan("QuadrupleFamily", quadruple_family_params(c), 64 * p)


def witness_64p_1mod8(p: int) -> WitnessPlan:
    plan = plan_64p_1mod8(p)
    realize(plan)
    return plan


# --------------------------------------------------------------------------
# Routing
# --------------------------------------------------------------------------


def plan_for(verdict: Any) -> WitnessPlan:
    """Construction plan for a member verdict (see ``classifier.classify``)."""
    if not verdict.member:
        raise NotMember(f"{verdict.value} is not in S(16)")
    v = verdict.value
    kind = verdict.reason_kind
    if kind == "Odd":
        return odd_plan(v)
    if kind == "DivisibleBy128":
        if v % 256 == 0:
            return WitnessPlan("Mult256Family", (-(v // 256),), v)
        return convolve_plan(WitnessPlan("Base128Constant", (), 128), odd_plan(v // 128))
    p = verdict.reason_prime
    if kind == "Prime5Mod8":
        head = plan_64p_5mod8(p)
    elif kind == "Prime3Mod8Squared":
        head = plan_64p2_3mod8(p)
    elif kind == "Prime1Mod8ClassPM3":
        head = plan_64p_1mod8(p)
    else:
        raise ValueError(f"unknown member reason {kind!r}")
    return convolve_plan(head, odd_plan(v // head.claimed_value))


def build_witness(verdict: Any) -> Vector:
    vec = realize(plan_for(verdict))
    return _verified(vec, verdict.value, "build_witness")
