"""Exact circulant determinants of order 16 and their cyclotomic norm factorization.

The circulant of ``(a_0, ..., a_{n-1})`` has column ``k`` equal to the vector
rotated down by ``k``; its determinant is ``prod_l f(zeta_n^l)`` with
``f(x) = sum a_k x^k``.  For ``n = 16`` the product splits into five integer
norms ``N_1 N_2 N_4 N_8 N_16`` (grouped by ``gcd(l, 16)``), each expressible
through a handful of linear recombinations of the coefficients.

Everything here is exact integer arithmetic.  Roots of unity are never
evaluated numerically; they live in ``Z[x]/(x^8 + 1)`` or in closed forms.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import InternalInvariantViolation

ORDER = 16


def _as_vector(v: Sequence[int], n: int | None = None) -> tuple[int, ...]:
    vec = tuple(int(x) for x in v)
    if not vec:
        raise ValueError("coefficient vector must be non-empty")
    if n is not None and len(vec) != n:
        raise ValueError(f"expected {n} coefficients, got {len(vec)}")
    return vec


# --------------------------------------------------------------------------
# Gaussian integers
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class GaussianInteger:
    re: int
    im: int

    def __mul__(self, other: GaussianInteger) -> GaussianInteger:
        return GaussianInteger(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def __add__(self, other: GaussianInteger) -> GaussianInteger:
        return GaussianInteger(self.re + other.re, self.im + other.im)

    def __neg__(self) -> GaussianInteger:
        return GaussianInteger(-self.re, -self.im)

    def conj(self) -> GaussianInteger:
        return GaussianInteger(self.re, -self.im)

    def norm(self) -> int:
        return self.re * self.re + self.im * self.im

    def __str__(self) -> str:
        sign = "-" if self.im < 0 else "+"
        return f"{self.re}{sign}{abs(self.im)}i"


# --------------------------------------------------------------------------
# Determinants
# --------------------------------------------------------------------------


def circulant_matrix(v: Sequence[int]) -> list[list[int]]:
    """Rows of the circulant with ``a_0`` on the diagonal and ``a_1`` just below it."""
    vec = _as_vector(v)
    n = len(vec)
    return [[vec[(i - j) % n] for j in range(n)] for i in range(n)]


def bareiss_det(matrix: Sequence[Sequence[int]]) -> int:
    """Determinant of a square integer matrix by fraction-free elimination."""
    m = [list(map(int, row)) for row in matrix]
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("matrix must be square")
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[k][k]
        row_k = m[k]
        for i in range(k + 1, n):
            row_i = m[i]
            lead = row_i[k]
            for j in range(k + 1, n):
                # exact by Sylvester's identity
                row_i[j] = (row_i[j] * pivot - lead * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    return sign * m[n - 1][n - 1]


def det_bareiss(v: Sequence[int]) -> int:
    """Exact circulant determinant of any order ``n >= 1``."""
    return bareiss_det(circulant_matrix(v))


def cyclic_convolve(u: Sequence[int], w: Sequence[int]) -> tuple[int, ...]:
    """Product of ``f_u`` and ``f_w`` in ``Z[x]/(x^n - 1)``."""
    uu = _as_vector(u)
    ww = _as_vector(w, len(uu))
    n = len(uu)
    out = [0] * n
    for i, ui in enumerate(uu):
        if ui == 0:
            continue
        for j, wj in enumerate(ww):
            out[(i + j) % n] += ui * wj
    return tuple(out)


# --------------------------------------------------------------------------
# Linear recombinations
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class Transforms:
    """``f`` reduced modulo ``x^4 - 1`` (b), ``x^4 + 1`` (c) and ``x^8 + 1`` (e)."""

    b: tuple[int, int, int, int]
    c: tuple[int, int, int, int]
    d: tuple[GaussianInteger, GaussianInteger, GaussianInteger, GaussianInteger]
    e: tuple[int, int, int, int, int, int, int, int]


def transforms(v: Sequence[int]) -> Transforms:
    a = _as_vector(v, ORDER)
    b = tuple((a[k] + a[k + 8]) + (a[k + 4] + a[k + 12]) for k in range(4))
    c = tuple((a[k] + a[k + 8]) - (a[k + 4] + a[k + 12]) for k in range(4))
    e = tuple(a[k] - a[k + 8] for k in range(8))
    d = tuple(GaussianInteger(e[k], e[k + 4]) for k in range(4))
    return Transforms(b, c, d, e)  # type: ignore[arg-type]


def alpha1_formula(e: Sequence[int]) -> GaussianInteger:
    """Closed-form ``f(z) f(z^5) f(z^9) f(z^13)`` for a primitive 16th root ``z``."""
    e0, e1, e2, e3, e4, e5, e6, e7 = (int(x) for x in e)
    re = (
        e0**4 + e4**4 - e2**4 - e6**4
        - 6 * e0**2 * e4**2 + 6 * e2**2 * e6**2
        - 2 * (e1**2 - e5**2) * (e3**2 - e7**2)
        + 4 * (e2 * e6 + e1 * e7 + e3 * e5) * (e0**2 - e4**2)
        - 4 * (e0 * e6 + e2 * e4 - e1 * e5) * (e1**2 - e5**2)
        + 4 * (e0 * e4 + e1 * e3 - e5 * e7) * (e2**2 - e6**2)
        - 4 * (e0 * e2 - e4 * e6 + e3 * e7) * (e3**2 - e7**2)
        - 8 * e0 * e2 * e1 * e5 + 8 * e0 * e4 * e1 * e3 - 8 * e0 * e4 * e5 * e7
        + 8 * e0 * e6 * e3 * e7 + 8 * e2 * e4 * e3 * e7
        - 8 * e2 * e6 * e1 * e7 - 8 * e2 * e6 * e3 * e5
        + 8 * e4 * e6 * e1 * e5 + 8 * e1 * e3 * e5 * e7
    )
    im = (
        e3**4 + e7**4 - e1**4 - e5**4
        - 6 * e3**2 * e7**2 + 6 * e1**2 * e5**2
        - 2 * (e0**2 - e4**2) * (e2**2 - e6**2)
        + 4 * (e0 * e4 - e1 * e3 + e5 * e7) * (e0**2 - e4**2)
        + 4 * (e0 * e2 - e4 * e6 - e3 * e7) * (e1**2 - e5**2)
        - 4 * (e2 * e6 - e1 * e7 - e3 * e5) * (e2**2 - e6**2)
        - 4 * (e0 * e6 + e2 * e4 + e1 * e5) * (e3**2 - e7**2)
        + 8 * e0 * e2 * e4 * e6 - 8 * e0 * e2 * e3 * e7 + 8 * e0 * e4 * e1 * e7
        + 8 * e0 * e4 * e3 * e5 - 8 * e0 * e6 * e1 * e5
        - 8 * e2 * e4 * e1 * e5 + 8 * e2 * e6 * e1 * e3
        - 8 * e2 * e6 * e5 * e7 + 8 * e4 * e6 * e3 * e7
    )
    return GaussianInteger(re, im)


def alpha2_formula(c: Sequence[int]) -> GaussianInteger:
    """Closed-form ``f(w) f(w^5)`` for a primitive 8th root ``w``."""
    c0, c1, c2, c3 = (int(x) for x in c)
    return GaussianInteger(c0 * c0 - c2 * c2 + 2 * c1 * c3, c3 * c3 - c1 * c1 + 2 * c0 * c2)


# --------------------------------------------------------------------------
# Ring computations in Z[x]/(x^m + 1)
# --------------------------------------------------------------------------


def _negacyclic_reduce(coeffs: Sequence[int], m: int) -> list[int]:
    out = [0] * m
    for deg, a in enumerate(coeffs):
        q, r = divmod(deg, m)
        out[r] += -a if q % 2 else a
    return out


def _negacyclic_mul(f: Sequence[int], g: Sequence[int]) -> list[int]:
    m = len(f)
    out = [0] * m
    for i, fi in enumerate(f):
        if fi == 0:
            continue
        for j, gj in enumerate(g):
            if i + j < m:
                out[i + j] += fi * gj
            else:
                out[i + j - m] -= fi * gj
    return out


def _galois_image(a: Sequence[int], power: int, m: int) -> list[int]:
    """``f(x^power)`` reduced in ``Z[x]/(x^m + 1)`` (with ``x^(2m) = 1``)."""
    period = 2 * m
    spread = [0] * period
    for k, ak in enumerate(a):
        spread[(k * power) % period] += ak
    return _negacyclic_reduce(spread, m)


def _conjugate_product(a: Sequence[int], powers: Sequence[int], m: int) -> list[int]:
    prod = [1] + [0] * (m - 1)
    for pw in powers:
        prod = _negacyclic_mul(prod, _galois_image(a, pw, m))
    return prod


def _gaussian_from_ring(prod: list[int], m: int, what: str) -> GaussianInteger:
    quarter = m // 2  # x^(m/2) plays sqrt(-1)
    stray = [deg for deg, c in enumerate(prod) if c and deg not in (0, quarter)]
    if stray:
        raise InternalInvariantViolation(
            f"{what}: ring product has nonzero coefficients at degrees {stray}"
        )
    return GaussianInteger(prod[0], prod[quarter])


def alpha1_exact(v: Sequence[int]) -> GaussianInteger:
    """``f(x) f(x^5) f(x^9) f(x^13)`` computed in ``Z[x]/(x^8 + 1)``."""
    a = _as_vector(v, ORDER)
    return _gaussian_from_ring(_conjugate_product(a, (1, 5, 9, 13), 8), 8, "alpha1")


def alpha2_exact(v: Sequence[int]) -> GaussianInteger:
    """``f(x) f(x^5)`` computed in ``Z[x]/(x^4 + 1)``."""
    a = _as_vector(v, ORDER)
    return _gaussian_from_ring(_conjugate_product(a, (1, 5), 4), 4, "alpha2")


# --------------------------------------------------------------------------
# Norm factorization
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class NormFactorization:
    n1: int
    n2: int
    n4: int
    n8: int
    n16: int
    alpha1: GaussianInteger
    alpha2: GaussianInteger
    transforms: Transforms

    @property
    def product(self) -> int:
        return self.n1 * self.n2 * self.n4 * self.n8 * self.n16

    def as_tuple(self) -> tuple[int, int, int, int, int]:
        return (self.n1, self.n2, self.n4, self.n8, self.n16)


def norms(v: Sequence[int]) -> NormFactorization:
    a = _as_vector(v, ORDER)
    t = transforms(a)
    b = t.b
    alpha1 = alpha1_formula(t.e)
    alpha2 = alpha2_formula(t.c)
    return NormFactorization(
        n1=alpha1.norm(),
        n2=alpha2.norm(),
        n4=(b[0] - b[2]) ** 2 + (b[1] - b[3]) ** 2,
        n8=sum(-x if k % 2 else x for k, x in enumerate(a)),
        n16=sum(a),
        alpha1=alpha1,
        alpha2=alpha2,
        transforms=t,
    )


def det_via_norms(v: Sequence[int]) -> int:
    return norms(v).product


# --------------------------------------------------------------------------
# 2-adic bookkeeping
# --------------------------------------------------------------------------


def in_odd_multiple(x: int, power_of_two: int) -> bool:
    """True iff ``x`` lies in ``power_of_two * Z_odd``."""
    return x % power_of_two == 0 and (x // power_of_two) % 2 == 1


@dataclass(frozen=True)
class ParityReport:
    all_odd_norms: bool
    det_in_64_odd: bool
    split_n1_n2_n4_2odd: bool  # N1, N2, N4 in 2Z_odd and N8 N16 in 8Z_odd
    split_n1_n2_2odd: bool  # N1, N2 in 2Z_odd and N4 N8 N16 in 16Z_odd
    det_class: str | None

    @property
    def conditions_agree(self) -> bool:
        return self.det_in_64_odd == self.split_n1_n2_n4_2odd == self.split_n1_n2_2odd


def parity_gate(v: Sequence[int]) -> ParityReport:
    """Classify the 2-adic shape of the norms.

    Whenever the determinant is ``64 * odd`` the two norm-level splits must
    both hold; anything else is an implementation fault.
    """
    nf = norms(v)
    n1, n2, n4, n8, n16 = nf.as_tuple()
    det = nf.product
    in64 = in_odd_multiple(det, 64)
    three_way = (
        in_odd_multiple(n1, 2)
        and in_odd_multiple(n2, 2)
        and in_odd_multiple(n4, 2)
        and in_odd_multiple(n8 * n16, 8)
    )
    two_way = (
        in_odd_multiple(n1, 2)
        and in_odd_multiple(n2, 2)
        and in_odd_multiple(n4 * n8 * n16, 16)
    )
    if in64 and not (three_way and two_way):
        raise InternalInvariantViolation(
            f"determinant {det} is 64*odd but norms {nf.as_tuple()} do not split accordingly"
        )
    return ParityReport(
        all_odd_norms=all(x % 2 for x in (n1, n2, n4, n8, n16)),
        det_in_64_odd=in64,
        split_n1_n2_n4_2odd=three_way,
        split_n1_n2_2odd=two_way,
        det_class="64Zodd" if in64 else None,
    )
